"""Kiefer-Wolfowitz feasibility of saturated Rasch Poisson designs.

Thin wrappers over the C++ core; systems, verdicts and catalogs are plain
dicts in the same JSON layout the command-line tool writes.
"""

import json

from . import _kwfeas

__version__ = _kwfeas.__version__

dimension = _kwfeas.dimension


def kw_system(support, k, d=1):
    if not isinstance(support, str):
        support = ",".join(support)
    return json.loads(_kwfeas.kw_system(support, k, d))


def system_text(system):
    return _kwfeas.system_text(json.dumps(system))


def restrict(system, restriction):
    return json.loads(_kwfeas.restrict(json.dumps(system), restriction))


def verify_witness(system, point):
    return _kwfeas.verify_witness(json.dumps(system), [str(v) for v in point])


def verify_certificate(system, certificate):
    return _kwfeas.verify_certificate(json.dumps(system), json.dumps(certificate))


def decide(system, strategy="auto", seed=42, time_budget=600.0, degree=4, order=2,
           multistart=64, box_budget=200000, box=None):
    if box is not None:
        box = (str(box[0]), str(box[1]))
    out = _kwfeas.decide(json.dumps(system), strategy, seed, time_budget, degree, order,
                         multistart, box_budget, box)
    return json.loads(out)


def build_catalog(k, d=1):
    return json.loads(_kwfeas.build_catalog(k, d))


def report(catalog):
    return _kwfeas.report(json.dumps(catalog))
