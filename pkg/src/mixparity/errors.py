"""Exception types shared across modules."""


class SystemMismatchError(ValueError):
    """Operands live in different Coxeter systems or contexts."""


class TableParseError(ValueError):
    """A table file is malformed."""


class TableValidationError(ValueError):
    """A table violates an invariant.  ``w`` is the offending word, ``check`` the failed test."""

    def __init__(self, check: str, w: tuple[int, ...] | None, detail: str = ""):
        self.check = check
        self.w = w
        where = "" if w is None else f" at w={list(w)}"
        msg = f"{check} failed{where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class MissingEntryError(KeyError):
    """A table has no entry for a requested element."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing table entry"


class SingularSystemError(ArithmeticError):
    """A multiplicity system is not unitriangular."""


class CategoryError(ValueError):
    """Invalid presented-category data or mismatched complexes."""
