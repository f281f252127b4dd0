import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from idiomlab.catalog import build_instance, catalog_get  # noqa: E402
from idiomlab.theory import ModuleAnalysis  # noqa: E402


@functools.lru_cache(maxsize=None)
def analysis(name: str) -> ModuleAnalysis:
    return ModuleAnalysis(build_instance(catalog_get(name))[1])


@functools.lru_cache(maxsize=None)
def module(name: str):
    return build_instance(catalog_get(name))[1]


@pytest.fixture
def get_analysis():
    return analysis


def bits_where(M, pred) -> int:
    return sum(1 << x for x in range(M.size) if pred(M.labels[x]))
