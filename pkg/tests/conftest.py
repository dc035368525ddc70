"""Shared fixtures: session-scoped zero lists, cached on disk under
tests/.cache so the expensive scans run once per checkout."""

from __future__ import annotations

from pathlib import Path

import pytest

from dirichlet_li.characters import enumerate_characters, real_primitive_character
from dirichlet_li.lfunc import (find_zeros, find_zeros_upper, height_for_count,
                                read_zeros, write_zeros)

CACHE_DIR = Path(__file__).parent / ".cache"


def _character(q: int, label: int):
    for chi in enumerate_characters(q):
        if chi.label == label:
            return chi
    raise LookupError(f"no character {q}.{label}")


def _cached_zero_list(chi, count: int):
    path = CACHE_DIR / f"zeros_{chi.modulus}_{chi.label}.txt"
    if path.exists():
        zl = read_zeros(path, chi_id=(chi.modulus, chi.label))
        if len(zl) >= count:
            return zl
    # pad the target height a little so the list certainly holds `count`
    T = height_for_count(chi.modulus, count + 30)
    zl = find_zeros(chi, T) if chi.is_real else find_zeros_upper(chi, T)
    assert len(zl) >= count, (len(zl), count)
    CACHE_DIR.mkdir(exist_ok=True)
    write_zeros(path, zl)
    return zl


@pytest.fixture(scope="session")
def zeros_q3():
    """>= 10^4 ordinates of the quadratic character mod 3."""
    return _cached_zero_list(real_primitive_character(3), 10 ** 4)


@pytest.fixture(scope="session")
def zeros_q5_quad():
    """>= 10^4 ordinates of the quadratic character mod 5."""
    return _cached_zero_list(real_primitive_character(5), 10 ** 4)


@pytest.fixture(scope="session")
def zeros_q5_complex():
    """>= 10^4 upper-half-plane ordinates of the order-4 character 5.1."""
    return _cached_zero_list(_character(5, 1), 10 ** 4)


@pytest.fixture(scope="session")
def zeros_q20():
    """>= 10^4 ordinates of the quadratic character of conductor 20."""
    return _cached_zero_list(_character(20, 6), 10 ** 4)


@pytest.fixture(scope="session")
def zeros_q60():
    """>= 10^4 ordinates of the quadratic character of conductor 60."""
    return _cached_zero_list(_character(60, 14), 10 ** 4)
