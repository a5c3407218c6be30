from etaq.models.cache import CacheHeader, CoefficientRecord
from etaq.models.cli import CliConfig
from etaq.models.meta import FormMeta
from etaq.models.reports import CrosscheckReport, Mismatch, ScanReport, VerificationReport

__all__ = [
    "CacheHeader",
    "CoefficientRecord",
    "CliConfig",
    "CrosscheckReport",
    "FormMeta",
    "Mismatch",
    "ScanReport",
    "VerificationReport",
]
