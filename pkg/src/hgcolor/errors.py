"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter lies outside the domain of the requested formula."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a hard size or budget cap.

    Raised instead of running unbounded (or overflowing a counter); callers
    that can continue should record the result as unknown.
    """


class ParseError(ValueError):
    """A hypergraph text file is malformed.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
