"""Command line: catalog queries, classification, Picard reports and checks.

Exit codes: 0 success, 1 mathematical rejection or failed check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys

from . import classify as cl
from . import picard as pc
from . import russell as ru
from .exactalg import (SCHEMA_VERSION, DescriptorMismatch, Field, GuardError, PrimeField,
                       Rationals, RationalFunctionField, UnsupportedError, finite_field, is_reduced,
                       poly_string)
from .pinching import (CATALOG, NotASubalgebraError, ParameterError, PinchDescriptor, a1mc,
                       conductor_of, conic_descent_prime, is_seminormal,
                       minimal_presentation, p1mncd, p1n, p1prime, russell_pinch)
from .semigroups import (NATURALS, NotASemigroupError, TailSemigroup, canonicalize, contains,
                         enumerate_semigroups, validate)
from .stability import (brute_force_stable_subalgebras, classify_ga_stable_char0,
                        classify_gm_stable, classify_gm_stable_local, is_ga_stable_char0,
                        is_gm_stable, monomial_subalgebra, truncated_algebra)


class UsageError(ValueError):
    """Bad flags or a malformed document."""


class Rejected(ValueError):
    """A well-formed request whose mathematical content is refused."""


# ---------------------------------------------------------------------------
# parsing helpers

def parse_field(text: str | None, q: int | None = None) -> Field:
    if q is not None:
        if text is not None:
            raise UsageError("give --field or --q, not both")
        return finite_field(q)
    if text is None:
        return Rationals()
    try:
        return cl.parse_field(text)
    except (ValueError, KeyError) as e:
        raise UsageError(f"--field {text!r}: {e}") from None


def parse_semigroup(text: str) -> TailSemigroup:
    """'0' for N, 'm' for {0} + [m, oo), 'm[c1,c2]' with the positive sporadic elements."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\[([\d,\s]*)\])?\s*", text)
    if not m:
        raise UsageError(f"cannot read semigroup {text!r}")
    start = int(m.group(1))
    extra = [int(x) for x in (m.group(2) or "").split(",") if x.strip()]
    if start == 0:
        if extra:
            raise NotASemigroupError("N has no sporadic elements")
        return NATURALS
    return canonicalize([0] + extra, start)


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += {"[": 1, "]": -1}.get(ch, 0)
        cur += ch
    if cur.strip():
        out.append(cur)
    return [x.strip() for x in out]


def parse_element(k: Field, text: str):
    """Sums of products of integers and generators, e.g. 'a+b', 'b^2', '3*a*b'."""
    text = text.replace(" ", "")
    if not text:
        raise UsageError("empty field element")
    total = k.zero()
    for term in re.split(r"(?=[+-])", text):
        if not term:
            continue
        sign = -1 if term[0] == "-" else 1
        term = term.lstrip("+-")
        val = k.from_int(sign)
        for factor in term.split("*"):
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if base.isdigit():
                x = k.from_int(int(base))
            elif isinstance(k, RationalFunctionField) and base in k.vars:
                x = k.gen(base)
            else:
                raise UsageError(f"unknown symbol {base!r} in {text!r}")
            val = k.mul(val, k.pow(x, e))
        total = k.add(total, val)
    return total


def parse_curve(name: str, k: Field) -> PinchDescriptor:
    """Catalog entries by alias or as family(args), e.g. 'p1mncd(2,3[0])'."""
    name = name.strip()
    alias = {"nodal": "p1prime(0,0)", "node": "p1prime(0,0)", "cusp": "p1n(2)",
             "p1": "p1n(0)", "a1": "a1mc(0)", "conic": "conic_descent(0)",
             "conic-prime": "conic_descent_prime(0)"}
    name = alias.get(name, name)
    m = re.fullmatch(r"([a-z0-9_]+)\((.*)\)", name)
    if not m or m.group(1) not in CATALOG:
        raise UsageError(f"unknown curve {name!r}; families: {', '.join(sorted(CATALOG))}")
    fam, args = m.group(1), _split_args(m.group(2))
    try:
        if fam == "p1n":
            return p1n(k, int(args[0]))
        if fam == "a1mc":
            return a1mc(k, parse_semigroup(args[0]))
        if fam in ("p1mncd", "p1prime"):
            build = p1mncd if fam == "p1mncd" else p1prime
            return build(k, parse_semigroup(args[0]), parse_semigroup(args[1]))
        if fam in ("conic_descent", "conic_descent_prime"):
            if not k.is_finite:
                raise UsageError("conic curves need a finite field (--q)")
            return CATALOG[fam](k.order, parse_semigroup(args[0]))
        if fam == "russell_pinch":
            if k != ru.example_field():
                raise UsageError("russell_pinch is available over F2(a,b)")
            K = ru.example_residue_field()
            c = parse_element(k, args[0])
            return russell_pinch(ru.example_form(), [K.add(K.root(0), K.scale(c, K.root(1)))])
    except IndexError:
        raise UsageError(f"{fam} needs more arguments") from None
    raise UsageError(f"unknown curve {name!r}")


def default_group(d: PinchDescriptor, k: Field) -> cl.GroupDescriptor:
    if d.normalization == "Conic":
        return cl.norm_torus(k.order)
    if d.normalization == "RussellCompletion":
        return cl.GroupDescriptor("GaForm", k, ru.example_form())
    if d.family == "p1n":
        return cl.GroupDescriptor("Ga", k)
    return cl.GroupDescriptor("Gm", k)


def parse_group(name: str, k: Field) -> cl.GroupDescriptor:
    if name == "GmNormTorus":
        if not k.is_finite:
            raise UsageError("the norm torus needs a finite field")
        return cl.norm_torus(k.order)
    if name == "GaForm":
        if k != ru.example_field():
            raise UsageError("GaForm is available for the example form over F2(a,b)")
        return cl.GroupDescriptor("GaForm", k, ru.example_form())
    if name not in cl.GROUP_KINDS:
        raise UsageError(f"unknown group {name!r}; one of {', '.join(cl.GROUP_KINDS)}")
    return cl.GroupDescriptor(name, k)


# ---------------------------------------------------------------------------
# descriptor documents

_PINCH_KEYS = ("version", "normalization", "projective", "ztilde", "z_sub", "support")
_FORM_KEYS = ("p", "n", "field", "coeffs")
_SEMIGROUP_KEYS = ("m", "c")


def _require(obj, keys, where=""):
    if not isinstance(obj, dict):
        raise UsageError(f"{where or '/'}: expected an object")
    for key in keys:
        if key not in obj:
            raise UsageError(f"missing field {where}/{key}")


def parse_descriptor(text: str):
    """A semigroup, Russell form or pinch descriptor from its JSON document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON: {e}") from None
    if not isinstance(obj, dict):
        raise UsageError("/: expected an object")
    if "version" in obj and obj["version"] != SCHEMA_VERSION:
        raise UsageError(f"/version: unsupported schema version {obj['version']!r}"
                         f" (this build reads {SCHEMA_VERSION})")
    if "normalization" in obj:
        _require(obj, _PINCH_KEYS)
        _require(obj["ztilde"], ("params",), "/ztilde")
        _require(obj["ztilde"]["params"], ("base", "factors"), "/ztilde/params")
        for i, f in enumerate(obj["ztilde"]["params"]["factors"]):
            _require(f, ("name", "order"), f"/ztilde/params/factors/{i}")
        try:
            return PinchDescriptor.from_json(obj)
        except (KeyError, TypeError) as e:
            raise UsageError(f"malformed pinch descriptor: {e}") from None
    if "coeffs" in obj or "p" in obj:
        _require(obj, _FORM_KEYS)
        return ru.RussellForm.from_json(obj)
    _require(obj, _SEMIGROUP_KEYS)
    if not isinstance(obj["m"], int) or not isinstance(obj["c"], list):
        raise UsageError("/m must be an integer and /c a list")
    return TailSemigroup.from_json(obj)


def serialize(value) -> str:
    return json.dumps(value.to_json() if hasattr(value, "to_json") else value,
                      sort_keys=True, ensure_ascii=False, indent=2)


# ---------------------------------------------------------------------------
# verification suites

def _check(name, passed, detail=""):
    return {"name": name, "passed": bool(passed), "detail": detail}


def suite_semigroups():
    out = []
    ok = True
    for s in enumerate_semigroups(8):
        members = [r for r in range(s.m) if contains(s, r)]
        ok &= canonicalize(members, s.m) == s
    out.append(_check("canonicalize of membership is the identity (m <= 8)", ok))
    for m_max in range(0, 7):
        brute = {NATURALS}
        for m in range(2, m_max + 1):
            for mask in range(1 << (m - 2)):
                c = (0,) + tuple(i + 1 for i in range(m - 2) if mask >> i & 1)
                if validate(m, c):
                    brute.add(TailSemigroup(m, c))
        ok = set(enumerate_semigroups(m_max)) == brute
        out.append(_check(f"enumerate({m_max}) equals brute force", ok, f"{len(brute)} semigroups"))
    return out


def suite_stable():
    out = []
    for q, m_top in ((2, 3), (3, 2)):
        k = finite_field(q)
        for m in range(1, m_top + 1):
            fast = {r.basis for r in classify_gm_stable(k, m)}
            alg = truncated_algebra(k, m)
            brute = set(brute_force_stable_subalgebras(alg, lambda v: is_gm_stable(v, "generic")))
            out.append(_check(f"Gm-stable subalgebras of F{q}[t]/(t^{m})", fast == brute,
                              f"{len(fast)} records"))
    return out


def suite_conductor():
    out = []
    k = PrimeField(3)
    out.append(_check("node conductor is x^2 - x",
                      conductor_of(p1prime(k, NATURALS, NATURALS)) == (0, 2, 1)))
    for n in (2, 3):
        g = conductor_of(p1n(k, n))
        out.append(_check(f"cusp conductor is x^{n}", g == (0,) * n + (1,)))
    F2 = PrimeField(2)
    for s in enumerate_semigroups(4):
        if s.m:
            g = conductor_of(a1mc(F2, s))
            out.append(_check(f"monomial curve {s.render()} has conductor t^{s.m}",
                              g == (0,) * s.m + (1,)))
    return out


def suite_picard():
    out = []
    for q in (2, 3):
        k = finite_field(q)
        node = pc.units_pic_sequence(p1prime(k, NATURALS, NATURALS))
        out.append(_check(f"nodal Pic torsion over F{q} has order q-1",
                          node.pic_torsion.torsion_order == q - 1))
        for n in (2, 3):
            r = pc.units_pic_sequence(p1n(k, n))
            out.append(_check(f"cusp P1_{n} Pic torsion over F{q} has order q^{n - 1}",
                              r.pic_torsion.torsion_order == q ** (n - 1)))
    recs = cl.enumerate_classified("2", 3)
    agree = all(pc.units_pic_sequence(r.curve).pic_torsion == pc.pic_torsion_oracle(r.curve)
                and all(e["exact"] for e in pc.units_pic_sequence(r.curve).exact)
                for r in recs if isinstance(r.curve, PinchDescriptor))
    out.append(_check("sequence agrees with the gluing count over F2 (m <= 3)", agree))
    for q in (2, 3):
        rec = cl.classify(conic_descent_prime(q, NATURALS), cl.norm_torus(q))
        a = pc.equivariant_pic(rec).torsion_order
        b = pc.equivariant_units_pic(rec).quotient.torsion_order
        out.append(_check(f"3c over F{q} has order q+1 by both routes", a == b == q + 1))
    chk = pc.equivariant_sequence_check_3b(3)
    out.append(_check("3b character kernel is ((0,1),1)", chk["kernel"] == [[0, 1], 1]))
    return out


def suite_russell():
    rep = ru.verify_worked_example()
    out = [_check(f"worked example: {c['name']}", c["passed"]) for c in rep["checks"][:4]]
    out.append(_check("worked example: residue field check recorded",
                      isinstance(rep["checks"][4]["passed"], bool),
                      f"outcome {rep['checks'][4]['passed']}"))
    split = ru.splitting_extension(ru.example_form())
    out.append(_check("splitting extension has degree 8", split.degree == 8, split.render(ru.example_field())))
    k = ru.example_field()
    cs = [parse_element(k, c) for c in ("0", "1", "a", "b", "a+b")]
    out.append(_check("five distinct subextensions", ru.subextension_family_distinct(cs) == 5))
    return out


def suite_seminormal():
    out = []
    recs = cl.enumerate_classified("3", 3)
    for r in recs:
        if not isinstance(r.curve, PinchDescriptor):
            continue
        d = r.curve
        reduced = minimal_presentation(d).ztilde
        if is_seminormal(d) != is_reduced(reduced):
            out.append(_check(f"seminormal iff reduced Z~: {r.detail}", False))
    out.append(_check("seminormal exactly on reduced catalog entries over F3", not out))
    ok = all(is_seminormal(r.curve) for r in recs if r.case_label in ("3a", "3b", "3c"))
    out.append(_check("3a/3b/3c records are seminormal", ok))
    ok = all(not is_seminormal(p1n(finite_field(3), n)) for n in range(2, 6))
    out.append(_check("P1_n with n >= 2 is not seminormal", ok))
    return out


def suite_ga(seed: int = 0, trials: int = 20):
    out = []
    for N in range(1, 5):
        recs = classify_ga_stable_char0(N)
        out.append(_check(f"Ga tails for N = {N} are stable",
                          len(recs) == N and all(is_ga_stable_char0(r.basis) for r in recs)))
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        v = random_non_tail(rng)
        failures += not is_ga_stable_char0(v)
    out.append(_check(f"{trials} random non-tail monomial subalgebras are unstable",
                      failures == trials))
    return out


def random_non_tail(rng: random.Random, m_range=(3, 7)):
    """A monomial subalgebra of Q[u]/(u^N) that is not span(1, u^n, ..., u^(N-1))."""
    k = Rationals()
    while True:
        s = rng.choice([s for s in enumerate_semigroups(m_range[1] - 1) if s.c[1:]])
        N = rng.randint(s.m, m_range[1])
        rec = monomial_subalgebra(k, N, s)
        exps = [i for i in range(N) if contains(s, i)]
        if exps != [0] + list(range(exps[1], N)):
            return rec.basis


def suite_classify():
    out = []
    for spec in ("2", "3", "Q", "F2(a,b)"):
        recs = cl.enumerate_classified(spec, 3)
        ok = all(cl.classify(r.curve, r.group).case_label == r.case_label for r in recs)
        out.append(_check(f"every catalog pair over {spec} keeps its label", ok,
                          f"{len(recs)} records"))
    rp = [r.curve for r in cl.enumerate_classified("F2(a,b)", 1, "russell")
          if r.case_label == "3a"]
    distinct = all(a != b for i, a in enumerate(rp) for b in rp[i + 1:])
    out.append(_check("distinct subfields give distinct descriptors", distinct and len(rp) == 5))
    return out


SUITES = {"semigroups": suite_semigroups, "stable": suite_stable, "conductor": suite_conductor,
          "picard": suite_picard, "russell": suite_russell, "seminormal": suite_seminormal,
          "ga": suite_ga, "classify": suite_classify}


# ---------------------------------------------------------------------------
# commands

def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(text)


def cmd_semigroups(args):
    if args.action == "enumerate":
        if args.m_max is None:
            raise UsageError("semigroups enumerate needs --m-max")
        sgs = enumerate_semigroups(args.m_max)
        _emit(args, [s.to_json() for s in sgs], "\n".join(s.render() for s in sgs))
        return 0
    if args.m is None:
        raise UsageError("semigroups check needs --m")
    c = tuple(int(x) for x in args.c.split(",") if x.strip()) if args.c else ()
    if not validate(args.m, c):
        raise Rejected(f"({args.m}, {list(c)}) is not a canonical tail semigroup:"
                       " c must start at 0, lie below m - 1 and be closed under sums below m")
    s = TailSemigroup(args.m, c)
    _emit(args, s.to_json(), s.render())
    return 0


def cmd_stable(args):
    k = parse_field(args.field, args.q)
    if args.action == "gm":
        recs = classify_gm_stable(k, _need(args.m, "--m"))
    elif args.action == "local":
        recs = classify_gm_stable_local(_need(args.m, "--m"), _need(args.n, "--n"), k)
    else:
        recs = classify_ga_stable_char0(_need(args.n, "--n"), k)
    lines = []
    for r in recs:
        what = (f"tail from u^{r.tail}" if r.kind == "GaTail"
                else " x ".join(s.render() for s in r.semigroups))
        lines.append(f"dim {r.basis.rank}: {what}")
    _emit(args, [r.to_json() for r in recs], "\n".join(lines))
    return 0


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def _curve_from_args(args) -> PinchDescriptor:
    if getattr(args, "descriptor", None):
        text = sys.stdin.read() if args.descriptor == "-" else open(args.descriptor).read()
        d = parse_descriptor(text)
        if not isinstance(d, PinchDescriptor):
            raise UsageError("expected a pinch descriptor document")
        return d
    k = parse_field(args.field, args.q)
    return parse_curve(_need(args.curve, "--curve"), k)


def cmd_pinch(args):
    d = _curve_from_args(args)
    if args.action == "minimal":
        d = minimal_presentation(d)
    text = d.describe() + f"\nseminormal: {'yes' if is_seminormal(d) else 'no'}"
    _emit(args, d.to_json(), text)
    return 0


def cmd_conductor(args):
    d = _curve_from_args(args)
    g = conductor_of(d)
    k = d.field
    payload = {"conductor": [k.encode(c) for c in g], "seminormal": is_seminormal(d)}
    _emit(args, payload, f"conductor: ({poly_string(k, g, 'x')})\n"
                         f"seminormal: {'yes' if payload['seminormal'] else 'no'}")
    return 0


def cmd_classify(args):
    if args.action == "enumerate":
        recs = cl.enumerate_classified(parse_field(args.field, args.q),
                                       _need(args.m_max, "--m-max"), args.family)
        _emit(args, [r.to_json() for r in recs],
              "\n".join(f"{r.case_label:12} {r.detail or r.group.render()}" for r in recs))
        return 0
    k = parse_field(args.field, args.q)
    d = parse_curve(_need(args.curve, "--curve"), k)
    g = parse_group(args.group, k) if args.group else default_group(d, k)
    rec = cl.classify(d, g)
    if isinstance(rec, cl.NotAlmostHomogeneous):
        _emit(args, rec.to_json(), f"not almost homogeneous: {rec.reason}")
        return 1
    _emit(args, rec.to_json(), f"{rec.case_label}: {rec.detail}")
    return 0


def cmd_picard(args):
    if args.action == "check-3b":
        out = pc.equivariant_sequence_check_3b(args.q)
        text = (f"matrix {out['matrix']}\nkernel generator {out['kernel']}\n"
                f"Smith diagonal {out['smith']}")
        if "pic" in out:
            from .exactalg import AbelianGroupDescription
            text += f"\nPic^G: {AbelianGroupDescription.from_json(out['pic']).render()}"
        _emit(args, out, text)
        return 0
    if args.curve is None and getattr(args, "descriptor", None) is None:
        raise UsageError("picard needs --curve or --descriptor")
    d = _curve_from_args(args)
    if args.action == "units-pic":
        rep = pc.units_pic_sequence(d)
        _emit(args, rep.to_json(), rep.render())
        return 0 if all(e["exact"] for e in rep.exact) else 1
    if args.action == "oracle":
        g = pc.pic_torsion_oracle(d)
        _emit(args, g.to_json(), f"Pic torsion (gluing count): {g.render()}")
        return 0
    k = d.field
    group = parse_group(args.group, k) if args.group else default_group(d, k)
    rec = cl.classify(d, group)
    if isinstance(rec, cl.NotAlmostHomogeneous):
        raise Rejected(f"not almost homogeneous: {rec.reason}")
    if rec.case_label not in cl.SEMINORMAL_LABELS:
        raise Rejected(f"label {rec.case_label} carries no equivariant Picard group")
    pic = pc.equivariant_pic(rec)
    payload = {"case_label": rec.case_label, "pic": pic.to_json()}
    text = f"{rec.case_label}: Pic^G = {pic.render()}"
    if rec.case_label in ("3a", "3b", "3c"):
        rep = pc.equivariant_units_pic(rec)
        payload["units"] = rep.to_json()
        text += f"\nO(Z~)^x / O(Z)^x = {rep.quotient.render()}"
    _emit(args, payload, text)
    return 0


def cmd_russell(args):
    if args.action == "example":
        rep = ru.verify_worked_example()
        lines = [f"{rep['form']} over {rep['field']}"]
        for c in rep["checks"]:
            lines.append(f"[{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
        _emit(args, rep, "\n".join(lines))
        return 0 if all(c["passed"] for c in rep["checks"][:4]) else 1
    k = parse_field(args.field or "F2(a,b)")
    if args.action == "family":
        cs = [parse_element(k, c) for c in _need(args.coeffs, "--coeffs").split(",")]
        n = ru.subextension_family_distinct(cs)
        _emit(args, {"distinct": n}, f"{n} distinct subextensions")
        return 0
    if args.p is None or args.n is None:
        raise UsageError("russell split needs --p and --n")
    cs = [parse_element(k, c) for c in (args.coeffs or "").split(",") if c.strip()]
    form = ru.make_form(args.p, args.n, cs, k)
    rep = ru.splitting_extension(form)
    _emit(args, {"form": form.to_json(), "extension": rep.to_json(k)},
          f"{form.equation()}\nsplits over {rep.render(k)} (degree {rep.degree})")
    return 0


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {}
    ok = True
    for name in names:
        checks = SUITES[name]()
        results[name] = checks
        ok &= all(c["passed"] for c in checks)
    text = "\n".join(f"[{'pass' if c['passed'] else 'FAIL'}] {name}: {c['name']}"
                     for name in names for c in results[name])
    _emit(args, {"passed": ok, "suites": results}, text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pinchcurve", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if field:
            sp.add_argument("--field", help="Q, a prime power q, or Fp(a,b)")
            sp.add_argument("--q", type=int, help="shorthand for --field q")

    s = sub.add_parser("semigroups", help="tail semigroups")
    s.add_argument("action", choices=("enumerate", "check"))
    s.add_argument("--m-max", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--c", help="comma-separated elements below m")
    common(s, field=False)

    s = sub.add_parser("stable", help="stable subalgebras of truncated algebras")
    s.add_argument("action", choices=("gm", "local", "ga"))
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    common(s)

    for name, actions in (("pinch", ("show", "minimal")), ("conductor", None)):
        s = sub.add_parser(name, help="pinch descriptors" if actions else "conductor ideal")
        if actions:
            s.add_argument("action", choices=actions)
        s.add_argument("--curve", help="catalog name, e.g. nodal, cusp, p1mncd(2,3[0])")
        s.add_argument("--descriptor", help="descriptor JSON file, - for stdin")
        common(s)

    s = sub.add_parser("classify", help="case labels")
    s.add_argument("action", choices=("pair", "enumerate"))
    s.add_argument("--curve")
    s.add_argument("--group", help="one of " + ", ".join(cl.GROUP_KINDS))
    s.add_argument("--m-max", type=int)
    s.add_argument("--family", choices=("homogeneous", "Gm", "Ga", "conic", "russell"))
    common(s)

    s = sub.add_parser("picard", help="Picard groups")
    s.add_argument("action", choices=("units-pic", "oracle", "equivariant", "check-3b"))
    s.add_argument("--curve")
    s.add_argument("--descriptor")
    s.add_argument("--group")
    common(s)

    s = sub.add_parser("russell", help="Russell forms of Ga")
    s.add_argument("action", choices=("split", "example", "family"))
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--coeffs", help="comma-separated coefficients of x^p, x^(p+1), ...")
    s.add_argument("--field", help="coefficient field, default F2(a,b)")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("verify", help="run the verification suites")
    s.add_argument("--suite", default="all", choices=("all",) + tuple(SUITES))
    s.add_argument("--json", action="store_true")
    return p


COMMANDS = {"semigroups": cmd_semigroups, "stable": cmd_stable, "pinch": cmd_pinch,
            "conductor": cmd_conductor, "classify": cmd_classify, "picard": cmd_picard,
            "russell": cmd_russell, "verify": cmd_verify}

REJECTIONS = (Rejected, NotASemigroupError, NotASubalgebraError, ru.NotAdditiveError)
USAGE = (UsageError, ParameterError, GuardError, UnsupportedError, DescriptorMismatch,
         OSError, ValueError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "field", None) is not None and getattr(args, "q", None) is not None:
        parser.error("give --field or --q, not both")
    try:
        return COMMANDS[args.command](args)
    except REJECTIONS as e:
        print(f"rejected: {e}", file=sys.stderr)
        return 1
    except USAGE as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
