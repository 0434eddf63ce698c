class FeatpcaError(Exception):
    exit_code = 1


class ValidationError(FeatpcaError):
    exit_code = 2


class MatrixParseError(ValidationError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {msg}" if where else msg)


class DataIOError(FeatpcaError):
    exit_code = 3


class NumericalDivergenceError(FeatpcaError):
    exit_code = 4
