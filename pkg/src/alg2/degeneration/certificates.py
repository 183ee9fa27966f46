"""Checking parametrized-basis certificates with exact Laurent arithmetic."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .. import expr, linalg, sampling
from ..algebra import KEYS, Structure, multiply
from ..families import constants
from ..laurent import LAURENT, Laurent, NotLaurent, T
from ..scalars import EXACT


class DegenerateBasis(ValueError):
    """The parametrized basis is singular for every t."""


@dataclass
class CertificateReport:
    id: str
    passed: bool
    reason: str = ""
    env: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "id": self.id,
            "status": "PASS" if self.passed else "FAIL",
            "reason": self.reason,
            "sample": {k: str(v) for k, v in self.env.items()},
            "constants": {k: str(v) for k, v in self.constants.items()},
        }


def _eval_all(texts, env):
    return [expr.evaluate(x, env) for x in texts]


def sample_env(cert: dict, rng: random.Random) -> dict:
    """Exact values for the free names of a certificate, inside the relevant domain."""
    mode = cert.get("sample")
    while True:
        if mode is None:
            env = {}
        elif mode == "free":
            env = {n: sampling.rational(rng) for n in cert["free"]}
        else:
            family, names = cert[mode]
            env = dict(zip(names, sampling.params(family, rng)))
        if all(expr.evaluate(x, env) != 0 for x in cert.get("nonzero", ())):
            return env


def source_structure(cert: dict, env: dict) -> Structure:
    family, texts = cert["source"]
    full = dict(env, t=T)
    params = [Laurent.lift(v) for v in _eval_all(texts, full)]
    return constants(family, params, LAURENT)


def target_structure(cert: dict, env: dict) -> Structure:
    family, texts = cert["target"]
    return constants(family, _eval_all(texts, env), EXACT)


def constants_in_basis(mu: Structure, basis):
    """Constants of mu in a Laurent basis, dividing by the determinant only at the end."""
    u, v = basis
    det = linalg.det2(linalg.from_columns(u, v))
    if Laurent.lift(det).is_zero():
        raise DegenerateBasis("the basis vectors are dependent for every t")
    adj = ((v[1], -v[0]), (-u[1], u[0]))
    vecs = (u, v)
    out = []
    for i in (0, 1):
        for j in (0, 1):
            w = multiply(mu, vecs[i], vecs[j])
            for row in adj:
                out.append(Laurent.lift(row[0] * w[0] + row[1] * w[1]) / det)
    return out


def verify_degeneration(cert: dict, env: dict | None = None, rng=None) -> CertificateReport:
    """PASS iff every constant in the parametrized basis is a polynomial in t with the target value at 0."""
    if env is None:
        env = sample_env(cert, rng or random.Random(0))
    env = {k: Fraction(v) for k, v in env.items()}
    ident = cert["id"]
    full = dict(env, t=T)
    try:
        mu = source_structure(cert, env)
        basis = [[Laurent.lift(x) for x in _eval_all(vec, full)] for vec in cert["basis"]]
        new = constants_in_basis(mu, basis)
    except NotLaurent as exc:
        return CertificateReport(ident, False, f"not a Laurent polynomial: {exc}", env)
    got = dict(zip(KEYS, new))
    poles = [k for k, c in got.items() if not c.is_polynomial()]
    if poles:
        return CertificateReport(ident, False, "pole at t = 0 in " + ", ".join(poles), env, got)
    want = target_structure(cert, env)
    bad = [
        f"{k}(0) = {c.at_zero()}, expected {w}"
        for (k, c), w in zip(got.items(), want.c)
        if c.at_zero() != w
    ]
    if bad:
        return CertificateReport(ident, False, "mismatch: " + "; ".join(bad), env, got)
    return CertificateReport(ident, True, "", env, got)
