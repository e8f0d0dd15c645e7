"""Exception types. Every error carries a short machine-readable ``kind``."""


class HyperCoarsenError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind

    def one_line(self) -> str:
        return f"error[{self.kind}]: {self}".replace("\n", " ")


class HypergraphFormatError(HyperCoarsenError, ValueError):
    pass


class ClusterFormatError(HyperCoarsenError, ValueError):
    pass


class EmbeddingError(HyperCoarsenError, ValueError):
    pass


class MetricError(HyperCoarsenError, ValueError):
    pass
