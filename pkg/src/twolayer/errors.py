class TwoLayerError(Exception):
    pass


class InvalidArgument(TwoLayerError, ValueError):
    pass


class UnsupportedInput(TwoLayerError, ValueError):
    """Raised for networks outside the two-layer, maximal-first-layer model."""


class ResourceLimit(TwoLayerError, RuntimeError):
    pass


class ParseError(TwoLayerError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
