"""Command-line front end and the stable JSON file formats.

Formats (schema "adicclean/1"):

    finite ring   {"kind":"zmod","m":12}
                  {"kind":"matrix","base":{...},"size":2}
                  {"kind":"triangular2","base":{...}}
                  {"kind":"dual","p":5}
    complete ring {"kind":"padic_matrix","p":2,"size":2,"precision":8}
                  {"kind":"skew_series","base":{...},"sigma":"identity","precision":8}
    element       bare JSON value: matrices as row-major nested arrays of
                  nonnegative integers below the modulus, dual numbers as
                  [a, b], series as arrays indexed by the power of t
    certificate   {"schema","ring","x","e","u_inv","n","precision"}

Exit codes are part of the interface: 0 success, 1 I/O or parse error
(including invalid ring specs in input files), 2 algebraic failure (the
failing check or error name is printed).  All output is byte-deterministic
for identical inputs: fixed key order, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from adicclean import adic, engine, finite, oracle
from adicclean.adic import AdicElem, CompleteRingSpec
from adicclean.engine import CleanCertificate
from adicclean.errors import AdicCleanError, InvalidSpec
from adicclean.finite import DUAL_PROJECTION, IDENTITY, FiniteElem, FiniteRingSpec
from adicclean.regularity import spectral_dispatch

SCHEMA = "adicclean/1"

_SIGMA_NAMES = {"identity": IDENTITY, "dual_projection": DUAL_PROJECTION}


# ---------------------------------------------------------------------------
# codecs
# ---------------------------------------------------------------------------


def encode_finite_spec(spec: FiniteRingSpec) -> dict:
    if spec.kind == "zmod":
        return {"kind": "zmod", "m": spec.m}
    if spec.kind == "matrix":
        return {"kind": "matrix", "base": encode_finite_spec(spec.base), "size": spec.size}
    if spec.kind == "triangular2":
        return {"kind": "triangular2", "base": encode_finite_spec(spec.base)}
    return {"kind": "dual", "p": spec.p}


def _require_keys(d: dict, allowed: set, what: str) -> None:
    extra = set(d) - allowed - {"schema"}
    if extra:
        raise ValueError(f"{what}: unexpected keys {sorted(extra)}")
    if "schema" in d and d["schema"] != SCHEMA:
        raise ValueError(f"{what}: unsupported schema {d['schema']!r}")


def decode_finite_spec(d) -> FiniteRingSpec:
    if not isinstance(d, dict):
        raise ValueError("ring spec must be a JSON object")
    kind = d.get("kind")
    if kind == "zmod":
        _require_keys(d, {"kind", "m"}, "zmod spec")
        return finite.zmod(d.get("m"))
    if kind == "matrix":
        _require_keys(d, {"kind", "base", "size"}, "matrix spec")
        return finite.matrix(decode_finite_spec(d.get("base")), d.get("size"))
    if kind == "triangular2":
        _require_keys(d, {"kind", "base"}, "triangular2 spec")
        return finite.triangular2(decode_finite_spec(d.get("base")))
    if kind == "dual":
        _require_keys(d, {"kind", "p"}, "dual spec")
        return finite.dual(d.get("p"))
    raise ValueError(f"unknown finite ring kind {kind!r}")


def encode_complete_spec(spec: CompleteRingSpec) -> dict:
    if spec.kind == "padic_matrix":
        return {"kind": "padic_matrix", "p": spec.p, "size": spec.size,
                "precision": spec.cap}
    return {"kind": "skew_series", "base": encode_finite_spec(spec.base),
            "sigma": spec.sigma.kind, "precision": spec.cap}


def decode_complete_spec(d) -> CompleteRingSpec:
    if not isinstance(d, dict):
        raise ValueError("ring spec must be a JSON object")
    kind = d.get("kind")
    if kind == "padic_matrix":
        _require_keys(d, {"kind", "p", "size", "precision"}, "padic_matrix spec")
        return adic.padic_matrix(d.get("p"), d.get("size"), d.get("precision"))
    if kind == "skew_series":
        _require_keys(d, {"kind", "base", "sigma", "precision"}, "skew_series spec")
        sigma_name = d.get("sigma")
        if sigma_name not in _SIGMA_NAMES:
            raise ValueError(f"unknown sigma {sigma_name!r}")
        return adic.skew_series(decode_finite_spec(d.get("base")),
                                _SIGMA_NAMES[sigma_name], d.get("precision"))
    raise ValueError(f"unknown complete ring kind {kind!r}")


def _encode_payload(spec: FiniteRingSpec, payload):
    if spec.kind == "zmod":
        return payload
    if spec.kind == "dual":
        return [payload[0], payload[1]]
    k = spec._matrix_size
    return [[_encode_payload(spec.base, payload[i * k + j]) for j in range(k)]
            for i in range(k)]


def _decode_payload(spec: FiniteRingSpec, data):
    if spec.kind == "zmod":
        if not isinstance(data, int) or isinstance(data, bool) or not 0 <= data < spec.m:
            raise ValueError(f"zmod({spec.m}) entry must be an int in [0, {spec.m}), got {data!r}")
        return data
    if spec.kind == "dual":
        if not isinstance(data, list) or len(data) != 2:
            raise ValueError("dual element must be a two-element array")
        a, b = data
        for v in (a, b):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < spec.p:
                raise ValueError(f"dual({spec.p}) component out of range: {v!r}")
        return (a, b)
    k = spec._matrix_size
    if not isinstance(data, list) or len(data) != k or any(
            not isinstance(row, list) or len(row) != k for row in data):
        raise ValueError(f"expected a {k}x{k} nested array")
    flat = tuple(_decode_payload(spec.base, entry) for row in data for entry in row)
    if spec.kind == "triangular2" and flat[2] != finite._p_zero(spec.base):
        raise ValueError("triangular2 element must have zero lower-left entry")
    return flat


def encode_finite_elem(e: FiniteElem):
    return _encode_payload(e.spec, e.payload)


def decode_finite_elem(spec: FiniteRingSpec, data) -> FiniteElem:
    return FiniteElem(spec, _decode_payload(spec, data))


def encode_adic_elem(x: AdicElem):
    spec = x.spec
    if spec.kind == "padic_matrix":
        k = spec.size
        return [[x.payload[i * k + j] for j in range(k)] for i in range(k)]
    return [_encode_payload(spec.base, c) for c in x.payload]


def decode_adic_elem(spec: CompleteRingSpec, data) -> AdicElem:
    if spec.kind == "padic_matrix":
        k, mod = spec.size, spec.modulus
        if not isinstance(data, list) or len(data) != k or any(
                not isinstance(row, list) or len(row) != k for row in data):
            raise ValueError(f"expected a {k}x{k} nested array")
        flat = []
        for row in data:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < mod:
                    raise ValueError(f"matrix entry must be an int in [0, {mod}), got {v!r}")
                flat.append(v)
        return AdicElem(spec, tuple(flat))
    if not isinstance(data, list) or len(data) != spec.cap:
        raise ValueError(f"expected exactly {spec.cap} series coefficients")
    return AdicElem(spec, tuple(_decode_payload(spec.base, c) for c in data))


def encode_certificate(cert: CleanCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "ring": encode_complete_spec(cert.ring),
        "x": encode_adic_elem(cert.x),
        "e": encode_adic_elem(cert.e),
        "u_inv": encode_adic_elem(cert.u_inv),
        "n": cert.n,
        "precision": cert.cap,
    }


def decode_certificate(d) -> CleanCertificate:
    if not isinstance(d, dict):
        raise ValueError("certificate must be a JSON object")
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported certificate schema {d.get('schema')!r}")
    _require_keys(d, {"schema", "ring", "x", "e", "u_inv", "n", "precision"}, "certificate")
    for key in ("ring", "x", "e", "u_inv", "n", "precision"):
        if key not in d:
            raise ValueError(f"certificate missing key {key!r}")
    ring = decode_complete_spec(d["ring"])
    n = d["n"]
    cap = d["precision"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("certificate n must be an int")
    if not isinstance(cap, int) or isinstance(cap, bool):
        raise ValueError("certificate precision must be an int")
    return CleanCertificate(
        ring=ring,
        x=decode_adic_elem(ring, d["x"]),
        e=decode_adic_elem(ring, d["e"]),
        u_inv=decode_adic_elem(ring, d["u_inv"]),
        n=n,
        cap=cap,
    )


# ---------------------------------------------------------------------------
# command helpers
# ---------------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


_INPUT_ERRORS = (OSError, ValueError, KeyError, TypeError, InvalidSpec)
# json.JSONDecodeError subclasses ValueError


def _fail_input(exc) -> int:
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return 1


def _fail_algebra(exc) -> int:
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _override_precision(x, cap):
    """Move x to a different cap: quotient map downward, canonical lift upward."""
    spec = x.spec
    if cap <= spec.cap:
        return adic.truncate(x, cap)
    if spec.kind == "padic_matrix":
        high = adic.padic_matrix(spec.p, spec.size, cap)
        return AdicElem(high, x.payload)
    high = adic.skew_series(spec.base, spec.sigma, cap)
    pad = (finite._p_zero(spec.base),) * (cap - spec.cap)
    return AdicElem(high, x.payload + pad)


def cmd_decompose(args) -> int:
    try:
        spec = decode_complete_spec(_load_json(args.ring))
        x = decode_adic_elem(spec, _load_json(args.element))
        if args.precision is not None:
            if not isinstance(args.precision, int) or args.precision < 1:
                raise ValueError(f"precision must be >= 1, got {args.precision}")
            x = _override_precision(x, args.precision)
    except _INPUT_ERRORS as exc:
        return _fail_input(exc)
    try:
        cert = engine.decompose(x)
    except AdicCleanError as exc:
        return _fail_algebra(exc)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump(encode_certificate(cert)))
    except OSError as exc:
        return _fail_input(exc)
    return 0


def cmd_verify(args) -> int:
    try:
        cert = decode_certificate(_load_json(args.cert))
    except _INPUT_ERRORS as exc:
        return _fail_input(exc)
    verdict = engine.verify_certificate(cert)
    if verdict.ok:
        print("pass")
        return 0
    for name in verdict.failures:
        print(name)
    return 2


def cmd_fitting(args) -> int:
    try:
        spec = decode_finite_spec(_load_json(args.ring))
        xbar = decode_finite_elem(spec, _load_json(args.element))
    except _INPUT_ERRORS as exc:
        return _fail_input(exc)
    try:
        sd = spectral_dispatch(xbar)
    except AdicCleanError as exc:
        return _fail_algebra(exc)
    if args.json:
        print(_dump({"schema": SCHEMA, "z": encode_finite_elem(sd.z), "n": sd.n}), end="")
    else:
        print(f"z = {_compact(encode_finite_elem(sd.z))}")
        print(f"n = {sd.n}")
    return 0


def cmd_oracle(args) -> int:
    try:
        ring_doc = _load_json(args.ring)
        if args.mode == "pi-clean":
            spec = decode_complete_spec(ring_doc)
        else:
            spec = decode_finite_spec(ring_doc)
        element = None
        if args.mode != "idempotents":
            if args.element is None:
                raise ValueError(f"mode {args.mode} requires --element")
            data = _load_json(args.element)
            if args.mode == "pi-clean":
                element = decode_adic_elem(spec, data)
            else:
                element = decode_finite_elem(spec, data)
    except _INPUT_ERRORS as exc:
        return _fail_input(exc)
    try:
        if args.mode == "idempotents":
            idems = oracle.enumerate_idempotents(spec, args.budget)
            encs = [encode_finite_elem(e) for e in idems]
            payload = {"schema": SCHEMA, "idempotents": encs}
            text = " ".join(_compact(v) for v in encs)
        elif args.mode == "strongly-clean":
            found = oracle.brute_force_strongly_clean(element, args.budget)
            encs = [encode_finite_elem(e) for e in found]
            payload = {"schema": SCHEMA, "witnesses": encs}
            text = " ".join(_compact(v) for v in encs)
        elif args.mode == "pi-clean":
            pairs = oracle.brute_force_pi_clean(element, args.budget)
            encs = [{"e": encode_adic_elem(e), "n": n} for e, n in pairs]
            payload = {"schema": SCHEMA, "witnesses": encs}
            text = "\n".join(f"{_compact(w['e'])} {w['n']}" for w in encs)
        else:  # pi-degree
            degree = oracle.minimal_pi_regular_degree(element, args.budget)
            payload = {"schema": SCHEMA, "degree": degree}
            text = str(degree)
    except AdicCleanError as exc:
        return _fail_algebra(exc)
    if args.json:
        print(_dump(payload), end="")
    else:
        print(text)
    return 0


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def _selftest_checks():
    from adicclean.lifting import hensel_lift_idempotent

    def ring_axioms():
        for spec in (finite.zmod(6), finite.dual(2), finite.triangular2(finite.zmod(2))):
            elems = list(spec.elements())
            one_, zero = spec.one(), spec.zero()
            for a in elems:
                assert a * one_ == a == one_ * a
                assert a + zero == a
                assert a + (-a) == zero
            for a in elems:
                for b in elems:
                    for c in elems:
                        assert (a * b) * c == a * (b * c)
                        assert a * (b + c) == a * b + a * c
                        assert (a + b) * c == a * c + b * c

    def invert_involution():
        spec = finite.zmod(12)
        for a in spec.elements():
            try:
                b = finite.invert_finite(a)
            except AdicCleanError:
                continue
            assert a * b == spec.one() == b * a
            assert finite.invert_finite(b) == a

    def sigma_endomorphism():
        finite.validate_endomorphism(DUAL_PROJECTION, finite.dual(2))
        finite.validate_endomorphism(IDENTITY, finite.zmod(6))

    def spectral_postconditions():
        for spec in (finite.zmod(8), finite.zmod(12),
                     finite.matrix(finite.zmod(2), 2)):
            for x in spec.elements():
                sd = spectral_dispatch(x)
                assert sd.z.is_idempotent()
                assert sd.z * x == x * sd.z
                assert (sd.z * x * sd.z) ** sd.n == spec.zero()
                finite.invert_finite(x - sd.z)

    def spectral_cross_validation():
        from adicclean.regularity import spectral_idempotent, spectral_idempotent_matrix

        spec = finite.matrix(finite.zmod(2), 2)
        for x in spec.elements():
            orbit = spectral_idempotent(x)
            fast = spectral_idempotent_matrix(x)
            assert orbit.z == fast.z and orbit.n == fast.n

    def hensel_doubling():
        rng = random.Random(7)
        ring = adic.padic_matrix(2, 2, 4)
        for _ in range(20):
            zbar = spectral_dispatch(adic.residue(ring.random_element(rng))).z
            noise = ring.random_element(rng)
            two = ring.one() + ring.one()
            a = adic.canonical_lift(zbar, ring) + two * noise
            record = []
            e = hensel_lift_idempotent(a, record)
            assert e.is_idempotent()

    def newton_inverse():
        rng = random.Random(11)
        ring = adic.padic_matrix(2, 2, 6)
        count = 0
        while count < 20:
            x = ring.random_element(rng)
            try:
                y = adic.invert_unit(x)
            except AdicCleanError:
                continue
            assert x * y == ring.one() == y * x
            count += 1

    def decompose_verify():
        rng = random.Random(13)
        rings = [
            adic.padic_matrix(2, 2, 4),
            adic.padic_matrix(3, 3, 3),
            adic.skew_series(finite.dual(2), DUAL_PROJECTION, 4),
        ]
        for spec in rings:
            for _ in range(10):
                cert = engine.decompose(spec.random_element(rng))
                assert engine.verify_certificate(cert).ok

    def oracle_engine_agreement():
        rng = random.Random(17)
        spec = adic.padic_matrix(2, 2, 2)
        zspec = adic.padic_matrix(2, 1, 2)
        for x in (zspec.element_at(i) for i in range(zspec.cardinality)):
            cert = engine.decompose(x)
            assert (cert.e, cert.n) in oracle.brute_force_pi_clean(x)
        for _ in range(25):
            x = spec.random_element(rng)
            cert = engine.decompose(x)
            assert (cert.e, cert.n) in oracle.brute_force_pi_clean(x)

    def pi_degree_reconciliation():
        zspec = finite.zmod(8)
        for x in zspec.elements():
            assert oracle.minimal_pi_regular_degree(x) == spectral_dispatch(x).n

    return [
        ("finite-ring-axioms", ring_axioms),
        ("invert-involution", invert_involution),
        ("sigma-endomorphism", sigma_endomorphism),
        ("spectral-postconditions", spectral_postconditions),
        ("spectral-cross-validation", spectral_cross_validation),
        ("hensel-doubling", hensel_doubling),
        ("newton-inverse", newton_inverse),
        ("decompose-verify", decompose_verify),
        ("oracle-engine-agreement", oracle_engine_agreement),
        ("pi-degree-reconciliation", pi_degree_reconciliation),
    ]


def cmd_selftest(args) -> int:
    results = []
    for name, check in _selftest_checks():
        try:
            check()
            results.append({"name": name, "ok": True})
        except Exception as exc:  # report and continue; selftest must see everything
            results.append({"name": name, "ok": False,
                            "detail": f"{type(exc).__name__}: {exc}"})
    ok = all(r["ok"] for r in results)
    if args.json:
        print(_dump({"schema": SCHEMA, "ok": ok, "checks": results}), end="")
    else:
        for r in results:
            if r["ok"]:
                print(f"ok   {r['name']}")
            else:
                print(f"FAIL {r['name']}: {r['detail']}")
        print("selftest:", "pass" if ok else "fail")
    return 0 if ok else 2


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adicclean",
                     description="strongly pi-clean decompositions in complete rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="compute a certificate for an element")
    p.add_argument("--ring", required=True, help="complete ring spec (JSON file)")
    p.add_argument("--element", required=True, help="element (JSON file)")
    p.add_argument("--precision", type=int, default=None,
                   help="override the spec's precision cap")
    p.add_argument("--out", required=True, help="certificate output path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("--cert", required=True, help="certificate (JSON file)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fitting", help="spectral idempotent and degree in a finite ring")
    p.add_argument("--ring", required=True, help="finite ring spec (JSON file)")
    p.add_argument("--element", required=True, help="element (JSON file)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fitting)

    p = sub.add_parser("oracle", help="brute-force searches on small rings")
    p.add_argument("--mode", required=True,
                   choices=["idempotents", "strongly-clean", "pi-clean", "pi-degree"])
    p.add_argument("--ring", required=True, help="ring spec (JSON file)")
    p.add_argument("--element", default=None, help="element (JSON file)")
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="run the built-in invariant battery")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
