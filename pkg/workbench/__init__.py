"""
workbench — finite categories, their endofunctors and fixed points.

Modules:
    fincat      categories, functors, natural transformations
    limits      pullbacks, pushouts, slices, adjunctions, the fixed-point criterion
    fixpoint    fixed points, S(F), transport, the hom-set colimit
    nerve       nerves, integral homology, Lefschetz numbers
    abgrp       integer matrices, Smith normal form, presented abelian groups
    site        pretopologies, site morphisms, additive enrichments
    sheaf       presheaves of abelian groups, sheaf condition, Čech cohomology
    catalog     named standard categories, spaces and sites
    generators  seeded random structures
    proptest    property suites with brute-force oracles
    document    WorkbenchDocument load and serialize
"""

__version__ = "0.1.0"
