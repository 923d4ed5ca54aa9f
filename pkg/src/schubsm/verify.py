"""Named identity suites shared by the CLI and the acceptance tests.

Each suite yields instances in a fixed order.  An instance is a replayable id
plus a zero-argument check returning ``True`` on success.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import chernaffine as ca
from . import chernfinite as cf
from . import positroid as pr
from . import weylperm as wp
from .symra import act_y

SUITES = ("ybe", "thm41", "cor43", "thm36", "thm62", "thm75", "duality")

DEFAULT_LAMBDAS = {
    2: [(1, 0), (2, 0)],
    3: [(1, 0, 0), (1, 1, 0), (2, 0, 0), (2, 1, 0)],
}


@dataclass
class Instance:
    ident: str
    check: Callable[[], bool]


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    failures: list = field(default_factory=list)
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {"suite": self.suite, "instances": self.instances, "failures": self.failures}
        if self.failures:
            out["minimal_failure"] = self.failures[0]
        return out


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CSM_THREADS", "1")))
    except ValueError:
        return 1


def _perm_arg(p) -> str:
    return wp.perm_str(p)


# ---------------------------------------------------------------------------
# suites


def suite_ybe(**_) -> Iterator[Instance]:
    results = pr.local_move_suite()
    for r in results:
        colors = "".join(map(str, r["colors"]))
        yield Instance(f"verify ybe --identity {r['identity']} --colors {colors}", lambda r=r: r["ok"])


def _thm41(u, w, i) -> bool:
    n = len(u)
    alpha = cf.simple_root(n, i)
    C = cf.richardson_csm
    lhs = cf.dl_operator(C(u, w), i, "sL") + cf.dl_operator(C(wp.left_mul_simple(i, u), w), i, "sL") * alpha
    rhs = C(u, w) + C(u, wp.left_mul_simple(i, w)) * alpha
    return lhs == rhs


def suite_thm41(n: int = 3, samples: int = 0, seed: int = 0, **_) -> Iterator[Instance]:
    """Richardson recursion: exhaustive on S_n, or ``samples`` random triples."""
    perms = wp.all_perms(n)
    if samples:
        rng = random.Random(seed)
        triples = [(rng.choice(perms), rng.choice(perms), rng.randrange(1, n)) for _ in range(samples)]
    else:
        triples = [(u, w, i) for u in perms for w in perms for i in range(1, n)]
    for u, w, i in triples:
        yield Instance(
            f"verify thm41 --n {n} --u {_perm_arg(u)} --w {_perm_arg(w)} --i {i}",
            lambda u=u, w=w, i=i: _thm41(u, w, i),
        )


def _projected_csm_by_window(P: wp.ParabolicData) -> dict:
    """``window -> pi_* c_SM(R_{u,w})`` over all pairs; representatives must agree."""
    out: dict = {}
    for u in wp.all_perms(P.n):
        for w in wp.all_perms(P.n):
            f = wp.AffinePerm.from_uw(u, w, P.lam).window
            t = cf.pushforward_GP(cf.richardson_csm(u, w), P)
            if f in out and out[f] != t:
                raise ArithmeticError(f"pushforward depends on the representative of f={f}")
            out[f] = t
    return out


def _cor43(table: dict, P: wp.ParabolicData, window, i: int) -> bool:
    n = P.n
    f = wp.AffinePerm(window)
    alpha = cf.simple_root(n, i)

    def get(g: wp.AffinePerm):
        if g.window in table:
            return table[g.window]
        R = cf.ring_for(n)
        return cf.LocTable(R, {mu: R.zero() for mu in P.orbit()}, P)

    lhs = cf.dl_operator(get(f), i, "sL") + cf.dl_operator(get(f.left_simple(i)), i, "sL") * alpha
    rhs = get(f) + get(f.right_simple(i)) * alpha
    return lhs == rhs


def suite_cor43(n: int = 3, **_) -> Iterator[Instance]:
    for lam in _lambdas(n):
        P = wp.ParabolicData(lam)
        holder: dict = {}

        def table(P=P, holder=holder):
            if "t" not in holder:
                holder["t"] = _projected_csm_by_window(P)
            return holder["t"]

        lam_arg = ",".join(map(str, lam))
        for f in cf.projrich_windows(P):
            for i in range(1, n):
                yield Instance(
                    f"verify cor43 --lambda {lam_arg} --window {f} --i {i}",
                    lambda P=P, f=f, i=i, table=table: _cor43(table(), P, f.window, i),
                )


def _thm36(u, w, P) -> bool:
    nonzero = not cf.pushforward_GP(cf.richardson_csm(u, w), P).is_zero()
    answers = {wp.ext_p_bruhat(u, w, P, a) for a in ("cover_bfs", "coset_reduce", "affine")}
    return len(answers) == 1 and nonzero == answers.pop()


def suite_thm36(n: int = 3, **_) -> Iterator[Instance]:
    for r in range(n):
        for S in itertools.combinations(range(1, n), r):
            P = wp.ParabolicData.from_simple_set(n, S)
            par = ",".join(map(str, S)) or "none"
            for u in wp.all_perms(n):
                for w in wp.all_perms(n):
                    yield Instance(
                        f"verify thm36 --n {n} --parabolic {par} --u {_perm_arg(u)} --w {_perm_arg(w)}",
                        lambda u=u, w=w, P=P: _thm36(u, w, P),
                    )


def _lambdas(n: int, lam=None) -> list[tuple]:
    if lam is not None:
        return [tuple(lam)]
    if n in DEFAULT_LAMBDAS:
        return DEFAULT_LAMBDAS[n]
    return [tuple([1] + [0] * (n - 1))]


def suite_thm62(n: int = 3, lam=None, **_) -> Iterator[Instance]:
    ns = [2, 3] if n is None else [n]
    for m in ns:
        for lm in _lambdas(m, lam):
            P = wp.ParabolicData(lm)
            lam_arg = ",".join(map(str, lm))
            holder: dict = {}

            def data(P=P, holder=holder):
                if "d" not in holder:
                    holder["d"] = (cf.projrich_ssm_recursive(P), ca.AffineLocContext(P.n))
                return holder["d"]

            for f in cf.projrich_windows(P):
                for mu in P.orbit():
                    mu_arg = ",".join(map(str, mu))

                    def check(f=f, mu=mu, data=data):
                        finite, ctx = data()
                        lhs = finite.value(f, mu)
                        rhs = ctx.value(f, wp.AffinePerm.translation(mu)) * ca.correction_factor(mu)
                        return lhs == rhs

                    yield Instance(f"verify thm62 --lambda {lam_arg} --window {f} --mu {mu_arg}", check)


def suite_thm75(k: int = 1, n: int = 3, **_) -> Iterator[Instance]:
    ctx = ca.AffineLocContext(n)
    cache: dict = {}
    for f in wp.enumerate_bounded(k, n):
        for S in itertools.combinations(range(1, n + 1), k):

            def check(f=f, S=S):
                if f.window not in cache:
                    cache[f.window] = pr.f_tilde(f)
                from .symra import substitute_x

                lhs = substitute_x(cache[f.window], S)
                rhs = ctx.value(f, wp.AffinePerm.translation(pr.indicator(S, n)))
                return lhs == rhs

            subset = ",".join(map(str, S)) or "none"
            yield Instance(f"verify thm75 --k {k} --n {n} --window {f} --subset {subset}", check)


def suite_duality(n: int = 3, **_) -> Iterator[Instance]:
    for u in wp.all_perms(n):
        for w in wp.all_perms(n):

            def check(u=u, w=w):
                val = cf.duality_pairing(u, w)
                return val == 1 if u == w else val.is_zero()

            yield Instance(f"verify duality --n {n} --u {_perm_arg(u)} --w {_perm_arg(w)}", check)


REGISTRY = {
    "ybe": suite_ybe,
    "thm41": suite_thm41,
    "cor43": suite_cor43,
    "thm36": suite_thm36,
    "thm62": suite_thm62,
    "thm75": suite_thm75,
    "duality": suite_duality,
}


def run_suite(
    name: str,
    instance_seconds: float | None = None,
    threads: int | None = None,
    on_result: Callable[[str, bool], None] | None = None,
    **params,
) -> SuiteReport:
    if name not in REGISTRY:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = {k: v for k, v in params.items() if v is not None}
    instances = list(REGISTRY[name](**params))
    report = SuiteReport(name)

    def run_one(inst: Instance):
        start = time.perf_counter()
        try:
            ok = bool(inst.check())
            reason = None if ok else "identity failed"
        except Exception as exc:  # reported, never swallowed silently
            ok, reason = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        if ok and instance_seconds is not None and elapsed > instance_seconds:
            ok, reason = False, f"runtime guard exceeded ({elapsed:.2f}s > {instance_seconds}s)"
        return ok, reason

    workers = threads or thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_one, instances))
    else:
        outcomes = [run_one(inst) for inst in instances]

    for inst, (ok, reason) in zip(instances, outcomes):
        report.instances += 1
        report.results.append((inst.ident, ok))
        if on_result:
            on_result(inst.ident, ok)
        if not ok:
            report.failures.append({"instance": inst.ident, "reason": reason})
    return report
