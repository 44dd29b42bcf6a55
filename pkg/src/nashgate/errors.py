from __future__ import annotations


class NashgateError(Exception):
    """Domain error carrying a stable diagnostic code (e.g. ``SELF_EDGE``)."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class ParseError(NashgateError):
    """Raised for malformed or invalid graph documents; carries a source position."""

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
        NashgateError.__init__(self, code, message)
        self.args = (f"{code}: {message}" + (f" ({where})" if where else ""),)
