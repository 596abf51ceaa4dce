"""
errors.py — exception hierarchy and validation reports for the workbench.

Every failure raised by a workbench module derives from WorkbenchError and
carries a ``kind`` naming the failure class (the names surface verbatim in
CLI reports). Law checkers do not raise: they return a ValidationReport,
which the caller may turn into a ValidationError.
"""

from dataclasses import dataclass, field


class WorkbenchError(Exception):
    """Raised for all workbench failures."""

    kind = "WorkbenchError"

    def __init__(self, message: str = "", witness: tuple = ()):
        super().__init__(message or self.kind)
        self.witness = tuple(witness)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self), "witness": list(self.witness)}


class UnknownObject(WorkbenchError):
    kind = "UnknownObject"


class UnknownMorphism(WorkbenchError):
    kind = "UnknownMorphism"


class NotEndofunctor(WorkbenchError):
    kind = "NotEndofunctor"


class NoPullback(WorkbenchError):
    kind = "NoPullback"


class NoPushout(WorkbenchError):
    kind = "NoPushout"


class NerveNotFinite(WorkbenchError):
    kind = "NerveNotFinite"


class DegreeOutOfRange(WorkbenchError):
    kind = "DegreeOutOfRange"


class IllTypedHom(WorkbenchError):
    kind = "IllTypedHom"


class NotParallel(WorkbenchError):
    kind = "NotParallel"


class NotAComplex(WorkbenchError):
    kind = "NotAComplex"


class NotNaturalIso(WorkbenchError):
    kind = "NotNaturalIso"


class NotSiteMorphism(WorkbenchError):
    kind = "NotSiteMorphism"


class NotExactInput(WorkbenchError):
    kind = "NotExactInput"


class ParseError(WorkbenchError):
    kind = "ParseError"


class DocumentReferenceError(WorkbenchError):
    kind = "ReferenceError"


class MissingEntity(WorkbenchError):
    kind = "MissingEntity"


class UnknownCommand(WorkbenchError):
    kind = "UnknownCommand"


class ValidationError(WorkbenchError):
    """A law checker rejected its input; ``report`` holds the details."""

    kind = "ValidationError"

    def __init__(self, report: "ValidationReport", context: str = ""):
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}{report.kind}: {report.message}", report.witness)
        self.report = report

    def as_dict(self) -> dict:
        data = super().as_dict()
        data["violation"] = self.report.kind
        return data


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str = ""
    message: str = ""
    witness: tuple = ()
    notes: tuple = field(default=())

    @classmethod
    def passed(cls, *notes: str) -> "ValidationReport":
        return cls(True, notes=tuple(notes))

    @classmethod
    def failed(cls, kind: str, message: str, *witness) -> "ValidationReport":
        return cls(False, kind, message, tuple(witness))

    def raise_for_error(self, context: str = "") -> None:
        if not self.ok:
            raise ValidationError(self, context)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        data = {"ok": self.ok}
        if not self.ok:
            data.update(kind=self.kind, message=self.message, witness=list(self.witness))
        if self.notes:
            data["notes"] = list(self.notes)
        return data
