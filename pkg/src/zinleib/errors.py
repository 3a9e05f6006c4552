"""Exception types raised by the toolkit."""


class ContractViolation(ValueError):
    """An argument violates a documented precondition (shape, tag, dimension)."""


class DegenerateForm(ContractViolation):
    def __init__(self, kernel_dim: int, what: str = "bilinear form"):
        self.kernel_dim = kernel_dim
        super().__init__(f"{what} is degenerate: kernel dimension {kernel_dim}")


class InvalidRepresentation(ContractViolation):
    pass


class InvalidQuadraticStructure(ContractViolation):
    pass


class InvalidInputKind(ContractViolation):
    pass


class InconsistentBialgebra(ContractViolation):
    pass


class ParseError(ContractViolation):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
