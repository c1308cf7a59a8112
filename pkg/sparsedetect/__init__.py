"""sparsedetect, detection tests and boundaries for sparse linear regression"""

import sys
import types

# ensure lazy imports for public API by overriding module.__class__

class _PublicAPI(types.ModuleType):
    @property
    def __version__(self):
        from sparsedetect._version import get_versions
        return get_versions()['version']

    @property
    def runtime_settings(self):
        if not hasattr(self, '_runtime_settings'):
            from sparsedetect.runtime import RuntimeSettings
            self._runtime_settings = RuntimeSettings()
        return self._runtime_settings

    @property
    def ProblemConfig(self):
        from sparsedetect.model import ProblemConfig
        return ProblemConfig

    @property
    def TestSpec(self):
        from sparsedetect.tests import TestSpec
        return TestSpec

    @property
    def estimate_errors(self):
        from sparsedetect.montecarlo import estimate_errors
        return estimate_errors

    @property
    def run_sweep(self):
        from sparsedetect.montecarlo import run_sweep
        return run_sweep

sys.modules[__name__].__class__ = _PublicAPI

del sys
del types
del _PublicAPI
