"""Exception hierarchy. Each class carries a short ``error_class`` tag that the
CLI reports on failure."""


class KChioError(Exception):
    error_class = "error"


class BackendMismatchError(KChioError, TypeError):
    error_class = "backend-mismatch"


class IndexSelectionError(KChioError, ValueError):
    error_class = "index"


class SingularPivotError(KChioError, ArithmeticError):
    """The requested pivot block A0 is singular."""

    error_class = "singular-pivot"


class RankDeficientError(SingularPivotError):
    """No nonsingular k x k block exists."""

    error_class = "rank-deficient"


class SingularSystemError(KChioError, ArithmeticError):
    error_class = "singular"


class ParseError(KChioError, ValueError):
    error_class = "parse"

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
