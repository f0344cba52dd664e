"""Wiring from configuration to root system, Nichols basis and quantum model."""
from __future__ import absolute_import
from fractions import Fraction

from . import log
from .cache import BasisCache
from .errors import ConfigError
from .nichols import NicholsBasis
from .quantum import QuantumModel, RootConstants
from .roots import RootSystem

MYPY = False
if MYPY:
    from typing import Any, Dict, List, Optional, Text

logger = log.get_logger(__name__)

FORMATS = ("json", "text")


def parse_constant(value):
    # type: (Any) -> Any
    try:
        result = Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ConfigError("Root constant %r is not an exact rational" % (value,))
    if not result:
        raise ConfigError("Root constants must be nonzero")
    return result


class EngineConfig(object):
    def __init__(self,
                 type_label,  # type: Text
                 rank,  # type: int
                 max_degree=None,  # type: Optional[int]
                 c_long=1,  # type: Any
                 c_short=1,  # type: Any
                 seed=0,  # type: int
                 cache_dir=None,  # type: Optional[Text]
                 output_format="json",  # type: Text
                 threads=1,  # type: int
                 timings=False,  # type: bool
                 samples=100,  # type: int
                 random_degree=4,  # type: int
                 max_rank=4,  # type: int
                 max_weyl_order=1152,  # type: int
                 truncation_default=6,  # type: int
                 full_instances=None,  # type: Optional[List[Text]]
                 use_cache=True,  # type: bool
                 ):
        # type: (...) -> None
        self.type_label = type_label
        self.rank = rank
        self.max_degree = max_degree
        self.c_long = parse_constant(c_long)
        self.c_short = parse_constant(c_short)
        self.seed = seed
        self.cache_dir = cache_dir
        if output_format not in FORMATS:
            raise ConfigError("Unknown output format %r" % (output_format,))
        self.output_format = output_format
        self.threads = max(1, threads)
        self.timings = timings
        self.samples = samples
        self.random_degree = random_degree
        self.max_rank = max_rank
        self.max_weyl_order = max_weyl_order
        self.truncation_default = truncation_default
        self.full_instances = full_instances or []
        self.use_cache = use_cache
        if max_degree is not None and max_degree < 1:
            raise ConfigError("--max-degree must be positive")

    @property
    def instance(self):
        # type: () -> Text
        return "%s%d" % (self.type_label, self.rank)

    @property
    def truncation(self):
        # type: () -> Optional[int]
        """Degree bound for the basis; None builds until the algebra ends"""
        if self.max_degree is not None:
            return self.max_degree
        if self.instance in self.full_instances:
            return None
        return self.truncation_default

    @classmethod
    def from_config(cls, config, type_label, rank, **kwargs):
        # type: (Dict[Text, Any], Text, int, **Any) -> EngineConfig
        engine = config["engine"]
        verify = config["verify"]
        truncation = engine["truncation"]
        full = truncation.get("full") or ""
        values = {
            "seed": engine.get("seed", 0) or 0,
            "threads": engine.get("threads", 1) or 1,
            "max_rank": engine.get("max_rank", 4),
            "max_weyl_order": engine.get("max_weyl_order", 1152),
            "truncation_default": truncation.get("default", 6),
            "full_instances": full.split() if isinstance(full, str) else [],
            "samples": verify.get("samples", 100),
            "random_degree": verify.get("random_degree", 4),
            "timings": bool(verify.get("timings", False)),
        }
        values.update({key: value for key, value in kwargs.items() if value is not None})
        return cls(type_label, rank, **values)

    def to_dict(self):
        # type: () -> Dict[Text, Any]
        return {"instance": self.instance,
                "max_degree": self.truncation,
                "c_long": str(self.c_long),
                "c_short": str(self.c_short),
                "seed": self.seed}


class Engine(object):
    def __init__(self, engine_config, config=None):
        # type: (EngineConfig, Optional[Dict[Text, Any]]) -> None
        self.engine_config = engine_config
        self.config = config
        self.rs = RootSystem(engine_config.type_label, engine_config.rank,
                             max_rank=engine_config.max_rank)
        self.rs.enumerate_weyl(engine_config.max_weyl_order)
        self.constants = RootConstants(self.rs, engine_config.c_long, engine_config.c_short)
        self._basis = None  # type: Optional[NicholsBasis]
        self._models = {}  # type: Dict[Text, QuantumModel]

    @property
    def basis(self):
        # type: () -> NicholsBasis
        if self._basis is None:
            bound = self.engine_config.truncation
            if self.engine_config.use_cache and self.config is not None:
                cache = BasisCache(self.config, path=self.engine_config.cache_dir)
                self._basis = cache.get_or_build(self.rs, bound)
            else:
                self._basis = NicholsBasis(self.rs, max_degree=bound).build()
            logger.info("%s basis ready: %r" % (self.rs.name, self._basis))
        return self._basis

    def model(self, side="left"):
        # type: (Text) -> QuantumModel
        if side not in self._models:
            self._models[side] = QuantumModel(self.basis, self.constants, side=side)
        return self._models[side]

    @property
    def max_degree(self):
        # type: () -> Optional[int]
        """Built degree for truncated bases, None when the algebra is complete"""
        return self.basis.exact_through()
