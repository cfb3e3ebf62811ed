"""The full set of checks behind ``nielsen-h1 verify-paper``."""

from concurrent.futures import ThreadPoolExecutor

from . import checks, magnus
from .automorphisms import ia_generators, relator_check
from .cocycles import named_cocycle
from .coefficients import ZZ, RingSpec, VElement
from .cohomology import cached_h1 as h1, generation_check, johnson_extension_feasible, restriction_to_inner, thread_count

MOD3, MOD5 = RingSpec(3), RingSpec(5)


def expected_generator_values(n):
    """f_M and f_K on P, Q, S, U as tabulated for the standard expansion."""
    zero = VElement.zero(n)
    fm_s = VElement.from_terms(n, [(j, 1, j, -1) for j in range(2, n + 1)])
    return {
        "fM": {"P": zero, "Q": zero, "S": fm_s, "U": zero},
        "fK": {"P": zero, "Q": zero, "S": zero, "U": VElement.basis(n, 1, 1, 2, -1)},
    }


def expected_johnson(n, idx):
    if len(idx) == 2:
        i, j = idx
        return VElement.basis(n, i, i, j)
    i, j, k = idx
    return VElement.basis(n, i, j, k)


def check_presentation(n):
    good, bad = relator_check(n)
    return not bad, f"{len(good)} relators are the identity" + (f"; failing: {', '.join(bad)}" if bad else "")


def check_h1(n, ring):
    r = h1(n, ring)
    ok = r.free_rank == 2 and not r.torsion
    return ok, f"free_rank={r.free_rank} torsion={r.torsion} (Z^1 rank {r.z1_rank}, B^1 rank {r.b1_rank})"


def check_generator_values(n):
    exp = expected_generator_values(n)
    bad = [f"{l}({s})" for l in exp for s in exp[l] if named_cocycle(l, n)(s) != exp[l][s]]
    return not bad, "all entries match" if not bad else f"mismatch at {bad}"


def check_johnson_values(n):
    bad = []
    for idx, sigma in ia_generators(n):
        e = expected_johnson(n, idx)
        if magnus.f_K(sigma) != 2 * e:
            bad.append(f"f_K{idx}")
        if magnus.tau1(sigma) != e:
            bad.append(f"tau1{idx}")
    return not bad, f"{len(ia_generators(n))} generators checked" + (f"; mismatch {bad[:5]}" if bad else "")


def check_generation(n):
    res = h1(n, ZZ)
    ok, index = generation_check(n, ZZ, result=res)
    c = res.coordinates
    fn = [2 * a - b for a, b in zip(c["fM"]["free"], c["fK"]["free"])]
    ident = fn == c["fN"]["free"]
    return ok and ident, f"index={index}; [fN]={c['fN']['free']}, 2[fM]-[fK]={fn}"


def check_johnson_extension(n):
    z = johnson_extension_feasible(n, ZZ).feasible
    m3 = johnson_extension_feasible(n, MOD3).feasible
    m5 = johnson_extension_feasible(n, MOD5).feasible
    return (not z) and m3 and m5, f"Z: {'feasible' if z else 'infeasible'}, Z/3: {m3}, Z/5: {m5}"


def check_outer(n):
    o = restriction_to_inner(n, ZZ)
    alpha = (o.alpha_named.get("fM"), o.alpha_named.get("fK"))
    ok = alpha == (n - 1, 2) and o.out_free_rank == 1 and not o.out_torsion
    return ok, f"alpha(fM, fK)={alpha}; H^1(Out) free rank {o.out_free_rank}"


def check_snf(n):
    r = h1(n, ZZ)
    r.quotient.snf.verify()
    return True, f"U A V = D re-verified on the {len(r.quotient.snf.A)}x{len(r.quotient.snf.A[0])} coboundary matrix"


def check_properties(seed, scale=0.2):
    fails = {}
    counts = {"fox_fundamental_identity": 500, "magnus_crossed_rule": 100, "cocycle_identity": 100,
              "factorization_roundtrip": 200, "factorized_f_M": 50}
    for name, full in counts.items():
        bad = checks.run_property(name, seed=seed, count=max(1, int(full * scale)))
        if bad:
            fails[name] = bad[:3]
    bad = checks.run_property("theta_independence", seed=seed)
    if bad:
        fails["theta_independence"] = bad[:3]
    return not fails, "all properties hold" if not fails else f"failures: {fails}"


def run_all_checks(n, seed=0, scale=0.2, threads=None):
    """{check name: (passed, detail)}, in sorted order."""
    if n < 5:
        raise ValueError(f"the verified statements are for n >= 5; got n={n}")
    jobs = {
        "01_presentation": lambda: check_presentation(n),
        "02_h1_z": lambda: check_h1(n, ZZ),
        "02_h1_mod3": lambda: check_h1(n, MOD3),
        "02_h1_mod5": lambda: check_h1(n, MOD5),
        "03_generator_values": lambda: check_generator_values(n),
        "04_johnson_values": lambda: check_johnson_values(n),
        "05_generation": lambda: check_generation(n),
        "06_johnson_extension": lambda: check_johnson_extension(n),
        "07_outer": lambda: check_outer(n),
        "08_properties": lambda: check_properties(seed, scale),
        "09_snf": lambda: check_snf(n),
    }

    def run(item):
        name, fn = item
        try:
            return name, fn()
        except Exception as exc:  # reported, not raised
            return name, (False, f"{type(exc).__name__}: {exc}")

    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        results = dict(pool.map(run, jobs.items()))
    return {k: results[k] for k in sorted(results)}
