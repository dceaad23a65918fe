# Copyright 2026 The ndpseq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Nested Dirichlet process posterior inference by sequential imputation."""

import json

try:
    from . import _ndpseq as _core
except ImportError:  # in-tree build: the extension sits next to the package
    import _ndpseq as _core

from_core = (
    "scenario_names",
    "log_marginal_likelihood",
    "ess",
    "gamer_pdf",
    "gamer_cdf",
    "gamer_sample",
    "gamer_discretize",
    "kde",
    "ValidationError",
    "DomainError",
    "ShapeError",
    "DegenerateError",
    "UnsupportedError",
    "LookupError",
    "IoError",
)
globals().update({name: getattr(_core, name) for name in from_core})

__all__ = list(from_core) + ["infer", "oracle"]
__version__ = "0.1.0"


def _config_text(config):
    if config is None or isinstance(config, str):
        return config
    return json.dumps(config)


def infer(scenario=None, *, counts=None, rows=None, config=None, K=None, seed=1,
          log_scale=None, trim=None, threads=None, queries=(), prior_samples=10000):
    """Runs sequential imputation and returns the report as a dict.

    Give either a built-in ``scenario`` name, or ``config`` (dict or JSON text
    with kappa, eps and base or gamer) with ``counts`` (one count list per
    row) or ``rows`` (one label list per row).
    """
    text = _core.infer_json(scenario=scenario, counts=counts, rows=rows,
                            config=_config_text(config), K=K, seed=seed,
                            log_scale=log_scale, trim=trim, threads=threads,
                            queries=list(queries), prior_samples=prior_samples)
    return json.loads(text)


def oracle(scenario=None, *, counts=None, rows=None, config=None, queries=(), top=10):
    """Exact posterior expectations by enumerating row partitions (M <= 12)."""
    text = _core.oracle_json(scenario=scenario, counts=counts, rows=rows,
                             config=_config_text(config), queries=list(queries), top=top)
    return json.loads(text)
