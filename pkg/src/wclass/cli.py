"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage or
input error, 3 protocol validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analysis, catalog, protocols
from .catalog import StateName
from .qstate import (
    Bipartition,
    StateVector,
    bipartition_entanglement,
    load_state,
    random_state,
    save_state,
    state_to_document,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_PROTOCOL = 0, 1, 2, 3
FIDELITY_PASS = 1 - 1e-9


class UsageError(Exception):
    pass


def _g15(x):
    return float(f"{x:.15g}")


def _add_state_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--state", choices=[s.value for s in StateName], required=required)
    p.add_argument("--n-qubits", type=int)
    p.add_argument("--n-param", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--level", type=int, default=1)


def _state_from_args(args) -> StateVector:
    try:
        return catalog.make_state(
            args.state,
            n_qubits=args.n_qubits,
            n_param=args.n_param,
            gamma=args.gamma,
            delta=args.delta,
            d=args.d,
            level=args.level,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_cut(text: str, n: int) -> Bipartition:
    try:
        wires = {int(w) for w in text.replace(",", "-").split("-") if w}
        return Bipartition(wires, n)
    except ValueError as exc:
        raise UsageError(f"bad --cut {text!r}: {exc}") from exc


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


# ---------------------------------------------------------------- subcommands


def cmd_state(args) -> int:
    state = _state_from_args(args)
    if args.out:
        save_state(state, args.out)
    if args.json:
        _emit_json(state_to_document(state))
    else:
        norm = float(np.linalg.norm(state.amplitudes))
        print(f"dims: {list(state.dims)}")
        print(f"norm: {norm:.6f}")
        for i, z in enumerate(state.amplitudes):
            if abs(z) > 1e-12:
                digits = "".join(map(str, state.register.digits(i)))
                print(f"  |{digits}>  {z.real:+.6f} {z.imag:+.6f}i")
    return EXIT_OK


def cmd_entropy(args) -> int:
    state = _input_state(args)
    cut = _parse_cut(args.cut, state.n_wires)
    e = bipartition_entanglement(state, cut)
    if args.json:
        _emit_json({"cut": str(cut), "entanglement_ebits": _g15(e)})
    else:
        print(f"E({cut}) = {e:.6f} ebits")
    return EXIT_OK


def cmd_scan(args) -> int:
    if not args.amplitudes_file and args.n_qubits is not None and args.n_qubits > analysis.MAX_SCAN_WIRES:
        raise UsageError(f"{args.n_qubits} wires exceeds the exhaustive-scan limit of {analysis.MAX_SCAN_WIRES}")
    state = _input_state(args)
    try:
        scan = analysis.scan_bipartitions(state, max_size=args.max_size, source=args.state or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            scan.to_csv(fh)
    best = scan.best()
    if args.json:
        _emit_json(
            {
                "n_wires": scan.n_wires,
                "rows": [
                    {"subset": list(r.subset), "size": r.size, "entanglement_ebits": _g15(r.entanglement)}
                    for r in scan.rows
                ],
                "best": {"subset": list(best.subset), "size": best.size, "entanglement_ebits": _g15(best.entanglement)},
            }
        )
    else:
        print(f"{'subset':>14} {'size':>4} {'E (ebits)':>10}")
        for r in scan.rows:
            print(f"{'-'.join(map(str, r.subset)):>14} {r.size:>4} {r.entanglement:>10.6f}")
        print(f"max: subset {'-'.join(map(str, best.subset))} size {best.size} E = {best.entanglement:.6f}")
    return EXIT_OK


TELEPORT_PROTOCOLS = ("epr", "ghz", "w123", "wn-family", "w-n-qubit", "wtilde4-pair")


def _teleport_protocol(args) -> protocols.TeleportationProtocol:
    name = args.protocol
    if name == "epr":
        return protocols.epr_teleport()
    if name == "ghz":
        return protocols.ghz_teleport()
    if name == "w123":
        return protocols.w123_teleport()
    if name == "wn-family":
        return protocols.wn_teleport_via_transform(args.n_param, args.gamma, args.delta)
    if name == "w-n-qubit":
        if args.n_qubits is None:
            raise UsageError("w-n-qubit needs --n-qubits")
        return protocols.w_n_qubit_teleport(args.n_qubits)
    return protocols.wtilde4_pair_teleport()


def _pair_payload(rng, family: int) -> StateVector:
    """alpha|00> + beta|11> (family 0) or alpha|01> + beta|10> (family 1)."""
    ab = random_state((2,), rng).amplitudes
    amps = np.zeros(4, dtype=complex)
    if family == 0:
        amps[0], amps[3] = ab
    else:
        amps[1], amps[2] = ab
    return StateVector.normalized(amps, (2, 2))


def cmd_teleport(args) -> int:
    try:
        proto = _teleport_protocol(args)
    except ValueError as exc:
        if isinstance(exc, protocols.ProtocolError):
            raise
        raise UsageError(str(exc)) from exc
    rng = np.random.default_rng(args.seed)
    if args.amplitudes_file:
        fixed = _load_file(args.amplitudes_file)
        if fixed.dims != proto.input_shape:
            raise UsageError(f"input dims {list(fixed.dims)} do not match protocol input {list(proto.input_shape)}")
        payloads = [fixed] * args.trials
    elif args.protocol == "wtilde4-pair":
        payloads = [_pair_payload(rng, t % 2) for t in range(args.trials)]
    else:
        payloads = [random_state(proto.input_shape, rng) for _ in range(args.trials)]

    D = proto.outcome_count
    prob_sum = np.zeros(D)
    min_fid = [None] * D
    realized = [0] * D
    for psi in payloads:
        t = protocols.run_teleportation(proto, psi)
        for o in t.outcomes:
            prob_sum[o.index] += o.probability
            if o.realized:
                realized[o.index] += 1
                min_fid[o.index] = o.fidelity if min_fid[o.index] is None else min(min_fid[o.index], o.fidelity)
    worst = min(f for f in min_fid if f is not None)
    ok = worst >= FIDELITY_PASS
    if args.json:
        _emit_json(
            {
                "protocol": proto.name,
                "trials": args.trials,
                "seed": args.seed,
                "outcomes": [
                    {
                        "index": x,
                        "probability": _g15(prob_sum[x] / len(payloads)),
                        "fidelity": None if min_fid[x] is None else _g15(min_fid[x]),
                        "realized": realized[x],
                    }
                    for x in range(D)
                ],
                "worst_fidelity": _g15(worst),
                "bits": _g15(proto.classical_bits),
            }
        )
    else:
        print(f"protocol {proto.name}: {D} outcomes, {proto.classical_bits:.6f} classical bits, {args.trials} trials")
        print(f"{'outcome':>7} {'mean p':>10} {'realized':>8} {'min fidelity':>12}")
        for x in range(D):
            f = "-" if min_fid[x] is None else f"{min_fid[x]:.6f}"
            print(f"{x:>7} {prob_sum[x] / len(payloads):>10.6f} {realized[x]:>8} {f:>12}")
        print(f"worst fidelity: {worst:.6f}")
    return EXIT_OK if ok else EXIT_NEGATIVE


DENSE_PROTOCOLS = ("epr", "ghz-2bit", "ghz-3bit", "w123-2bit", "w123-3bit", "w-n-qubit", "omega")


def _dense_protocol(args) -> protocols.DenseCodingProtocol:
    name = args.protocol
    if name == "epr":
        return protocols.epr_dense2()
    if name == "ghz-2bit":
        return protocols.ghz_dense2()
    if name == "ghz-3bit":
        return protocols.ghz_dense3()
    if name == "w123-2bit":
        return protocols.w123_dense2()
    if name == "w123-3bit":
        return protocols.w123_dense3()
    if args.n_qubits is None:
        raise UsageError(f"{name} needs --n-qubits")
    if name == "w-n-qubit":
        return protocols.w_n_qubit_dense2(args.n_qubits)
    return protocols.omega_dense(args.n_qubits, args.d)


def cmd_densecode(args) -> int:
    try:
        proto = _dense_protocol(args)
    except ValueError as exc:
        if isinstance(exc, protocols.ProtocolError):
            raise
        raise UsageError(str(exc)) from exc
    K = len(proto.encoders)
    if args.message is not None and not args.all_messages:
        if not 0 <= args.message < K:
            raise UsageError(f"--message must be in 0..{K - 1}")
        messages = [args.message]
    else:
        messages = list(range(K))
    width = max(1, (K - 1).bit_length())
    rows = []
    for m in messages:
        try:
            decoded = protocols.run_dense_coding(proto, m)
        except protocols.ProtocolError:
            decoded = None
        overlap = float(protocols.decode_overlaps(proto, m).max())
        rows.append((m, decoded, overlap))
    good = sum(1 for m, dec, _ in rows if dec == m)
    bits = protocols.capacity_bits(proto)
    if args.json:
        _emit_json(
            {
                "protocol": proto.name,
                "bits": _g15(bits),
                "messages": [
                    {"message": m, "bits": format(m, f"0{width}b"), "decoded": dec, "overlap": _g15(ov)}
                    for m, dec, ov in rows
                ],
                "decoded": good,
                "total": len(rows),
            }
        )
    else:
        print(f"protocol {proto.name}: {K} messages, {bits:.6f} bits")
        print(f"{'message':>8} {'bits':>6} {'decoded':>8} {'overlap':>9}")
        for m, dec, ov in rows:
            print(f"{m:>8} {format(m, f'0{width}b'):>6} {str(dec):>8} {ov:>9.6f}")
        print(f"{good}/{len(rows)} decoded")
    return EXIT_OK if good == len(rows) else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    state = _input_state(args)
    try:
        verdict = analysis.classify_suitability(state)
        w_class = analysis.w_class_membership(state)
        tangle = analysis.three_tangle(state)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cut = str(verdict.witness_cut) if verdict.suitable else None
    if args.json:
        _emit_json(
            {
                "suitable": verdict.suitable,
                "witness_cut": cut,
                "max_single_cut_entanglement": _g15(verdict.max_single_cut_entanglement),
                "entropy_criterion": verdict.entropy_criterion,
                "three_tangle": _g15(tangle),
                "w_class": w_class,
                "reconstruction_error": _g15(verdict.reconstruction_error(state)) if verdict.suitable else None,
            }
        )
    else:
        print(f"suitable: {'yes' if verdict.suitable else 'no'}")
        if verdict.suitable:
            print(f"witness cut: {cut}")
            print(f"witness reconstruction error: {verdict.reconstruction_error(state):.3e}")
        print(f"max single-qubit-cut entanglement: {verdict.max_single_cut_entanglement:.6f}")
        print(f"three-tangle: {tangle:.6f}")
        print(f"W-class: {'yes' if w_class else 'no'}")
    return EXIT_OK if verdict.suitable else EXIT_NEGATIVE


def _load_file(path) -> StateVector:
    try:
        return load_state(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _input_state(args) -> StateVector:
    path = getattr(args, "amplitudes_file", None)
    if path:
        return _load_file(path)
    if not args.state:
        raise UsageError("give --state or --amplitudes-file")
    return _state_from_args(args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="build a catalog state and write its JSON document")
    _add_state_flags(p)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("entropy", help="entanglement of a state across one cut")
    _add_state_flags(p, required=False)
    p.add_argument("--amplitudes-file")
    p.add_argument("--cut", default="0", help="side A wires, hyphen-joined (e.g. 0-1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("scan", help="entanglement over every bipartition")
    _add_state_flags(p, required=False)
    p.add_argument("--amplitudes-file")
    p.add_argument("--csv")
    p.add_argument("--max-size", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("teleport", help="run a teleportation protocol on random inputs")
    p.add_argument("--protocol", choices=TELEPORT_PROTOCOLS, required=True)
    p.add_argument("--n-qubits", type=int)
    p.add_argument("--n-param", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitudes-file", help="teleport this state instead of random inputs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_teleport)

    p = sub.add_parser("densecode", help="run a dense-coding protocol over its messages")
    p.add_argument("--protocol", choices=DENSE_PROTOCOLS, required=True)
    p.add_argument("--n-qubits", type=int)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--message", type=int)
    p.add_argument("--all-messages", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_densecode)

    p = sub.add_parser("classify", help="three-qubit suitability verdict with witness")
    _add_state_flags(p, required=False)
    p.add_argument("--amplitudes-file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "trials", 1) < 1:
            parser.error("--trials must be >= 1")
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except protocols.ProtocolError as exc:
        print(f"protocol validation failed: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
