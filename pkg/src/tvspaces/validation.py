"""Validation reports returned by the law checkers."""

from dataclasses import dataclass


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator: every failure carries a witness tuple.

    ``violations`` is a list of ``(law_name, witness)`` pairs; ``notes``
    records caveats that are not failures (for example, bounded checks).
    """

    violations: tuple = ()
    notes: tuple = ()

    @property
    def passed(self):
        return not self.violations

    def __bool__(self):
        return self.passed

    @staticmethod
    def collect(violations, notes=()):
        return ValidationReport(tuple(violations), tuple(notes))

    def describe(self):
        lines = []
        if self.passed:
            lines.append("pass")
        else:
            lines.append("fail")
            for law, witness in self.violations:
                lines.append(f"  {law}: witness {witness!r}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
