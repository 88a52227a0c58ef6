"""Acceptance gate, one test per numbered criterion.

Criteria 2 and 4 are implemented exactly as stated and FAIL: their reference
constant term (c + 2, and nonzero values at m ≤ 2) contradicts both
independent computations in this package, which agree with each other that
T_m = (m−2)(m−1+c(z)) on the p-domain (so a₂ = 2 − 2c and the level-m space
is trivial for m ≤ 2).  The failure messages carry the honest cross-check
values.  See README ("Known discrepancies") for the full derivation trail.
"""

import pytest

from tyczlab import acceptance


def _check(result):
    detail = "\n".join([result.line()] + [f"  {d}" for d in result.details])
    assert result.passed, detail


def test_criterion_01_simanca_distortion():
    _check(acceptance.criterion_1())


def test_criterion_02_pdomain_reference_polynomial():
    _check(acceptance.criterion_2())


def test_criterion_03_closed_form_constants():
    _check(acceptance.criterion_3())


def test_criterion_04_coefficient_cross_checks():
    _check(acceptance.criterion_4())


def test_criterion_05_finite_expansion_structure():
    _check(acceptance.criterion_5())


def test_criterion_06_csck_catalog():
    _check(acceptance.criterion_6())


def test_criterion_07_inducibility_obstructions():
    _check(acceptance.criterion_7())


def test_criterion_08_balanced_failure():
    _check(acceptance.criterion_8())


def test_criterion_09_pk_identity():
    _check(acceptance.criterion_9())


def test_criterion_10_szego_probes():
    _check(acceptance.criterion_10())
