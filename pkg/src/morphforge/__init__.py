"""morphforge: landmark-based face morph generation, dataset pipeline
orchestration, ISO/IEC 30107-3 detector evaluation, and review tooling."""

__version__ = "0.1.0"
