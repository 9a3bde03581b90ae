# Copyright 2026 The txsched Authors. Licensed under the Apache License,
# Version 2.0. See the LICENSE file at the root of this distribution or at
# http://www.apache.org/licenses/LICENSE-2.0

"""Conflict-aware scheduling of block transactions onto cores.

Workloads, schedules and reports are plain dicts with the same layout as
the JSON files the command-line tool reads and writes.
"""

import json

from . import _core
from ._core import ParseError, ValidationError, upper_bound_chromatic, upper_bound_closed_form

__all__ = [
    "ParseError",
    "ValidationError",
    "exact_optimal",
    "generate_workload",
    "metrics",
    "run_bench",
    "schedule",
    "upper_bound_chromatic",
    "upper_bound_closed_form",
    "validate",
]

DEFAULT_STRATEGY = "LOOSE:MCDF:3"


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def generate_workload(n, conflict_rate, seed, **options):
    """Synthetic workload. Options mirror the ``generate`` subcommand."""
    return json.loads(_core.generate_workload(n, conflict_rate, seed, **options))


def schedule(workload, strategy=DEFAULT_STRATEGY):
    return json.loads(_core.schedule(_text(workload), strategy))


def validate(workload, schedule):
    return json.loads(_core.validate(_text(workload), _text(schedule)))


def metrics(workload, schedule, alpha_time=1.0):
    return json.loads(_core.metrics(_text(workload), _text(schedule), alpha_time))


def exact_optimal(workload, node_budget=50_000_000, pruning=True):
    return json.loads(_core.exact_optimal(_text(workload), node_budget, pruning))


def run_bench(process_counts, conflict_rates, seeds, core_counts, strategies=(), threads=1,
              out_dir=None):
    """Runs the experiment grid and returns results.csv as text."""
    return _core.run_bench(list(process_counts), list(conflict_rates), list(seeds),
                           list(core_counts), list(strategies), threads, out_dir)
