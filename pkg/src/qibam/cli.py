"""Command-line entry point.

Exit codes: 0 ok, 2 input error, 3 resource ceiling, 4 serialization limit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import __version__
from .circuit import Circuit, execute
from .classical import classical_align
from .dna import (
    QuantumDatabase,
    build_database_circuit,
    build_hamming_evolution,
    build_qpd_circuit,
    normalize,
)
from .errors import (
    DimensionTooLarge,
    MaxRoundsExceeded,
    QibamError,
    QubitCeilingExceeded,
    UnsupportedOpForSerialization,
)
from .fasta import FastaError, read_first_record
from .qasm import parse, serialize
from .resources import estimate
from .search import (
    AutoKnown,
    BoyerRandomized,
    Diffusion,
    DistributedQuery,
    Fixed,
    QueryConfig,
    Schedule,
    align,
    boyer_search,
    build_diffusion,
    build_memory_oracle,
    build_query_oracle,
    build_state_reflection,
)
from .statevector import marginal, new_state, sample_distribution

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_SERIALIZE = 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


# -- shared helpers ----------------------------------------------------------

def _add_reference(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--ref-seq", help="reference sequence given inline")
    g.add_argument("--ref-file", help="FASTA file; the first record is used")


def _add_query(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--query", help="read to align")
    g.add_argument("--query-file", help="file with one read per line")


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def _load_reference(args):
    if args.ref_file:
        record_id, seq = read_first_record(args.ref_file)
        return record_id or args.ref_file, seq
    return "inline", normalize(args.ref_seq)


def _load_queries(args):
    if args.query is not None:
        return [normalize(args.query)]
    with open(args.query_file, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    queries = [normalize(ln) for ln in lines if ln and not ln.startswith(("#", ">"))]
    if not queries:
        raise CliError(f"{args.query_file}: no queries found")
    return queries


def _exclusions(args, reference, m):
    return (len(reference) - m,) if getattr(args, "exclude_last", False) else ()


def _emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(report):
    return json.dumps(report, indent=2) + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _header(command):
    return {"schema_version": SCHEMA_VERSION, "tool": "qibam", "version": __version__, "command": command}


# -- align -------------------------------------------------------------------

def _config_from_args(args):
    if args.boyer:
        iterations = BoyerRandomized(args.max_rounds, args.seed)
    elif args.auto is not None:
        iterations = AutoKnown(args.auto)
    else:
        iterations = Fixed(args.iterations)
    return QueryConfig(
        gamma=args.gamma,
        schedule=args.schedule,
        iterations=iterations,
        diffusion=args.diffusion,
        shots=args.shots,
        seed=args.seed,
    )


def _config_dict(cfg):
    it = cfg.iterations
    if isinstance(it, Fixed):
        iters = {"policy": "fixed", "k": it.k}
    elif isinstance(it, AutoKnown):
        iters = {"policy": "auto", "num_solutions": it.num_solutions}
    else:
        iters = {"policy": "boyer", "max_rounds": it.max_rounds, "seed": it.seed}
    return {
        "gamma": cfg.gamma,
        "schedule": cfg.schedule.value,
        "diffusion": cfg.diffusion.value,
        "iterations": iters,
        "shots": cfg.shots,
        "seed": cfg.seed,
    }


def _query_seed(seed, index):
    if index == 0:
        return seed
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint32)[0])


def cmd_align(args):
    t0 = time.perf_counter()
    ref_id, reference = _load_reference(args)
    queries = _load_queries(args)
    cfg = _config_from_args(args)
    load_s = time.perf_counter() - t0

    runs = []
    for n, query in enumerate(queries):
        if len(query) > len(reference):
            raise CliError(f"query {query!r} is longer than the reference ({len(reference)} bases)")
        run_cfg = QueryConfig(
            gamma=cfg.gamma, schedule=cfg.schedule, iterations=cfg.iterations,
            diffusion=cfg.diffusion, shots=cfg.shots, seed=_query_seed(cfg.seed, n),
        )
        excl = _exclusions(args, reference, len(query))
        t1 = time.perf_counter()
        if args.boyer:
            try:
                outcome = boyer_search(reference, query, run_cfg, exclusions=excl)
            except MaxRoundsExceeded as exc:
                outcome = exc.outcome
            result = {
                "tag": outcome.tag,
                "verified": outcome.verified,
                "rounds": outcome.rounds,
                "iterations": list(outcome.iterations),
            }
            probs = hist = dists = None
        else:
            res = align(reference, query, run_cfg, exclusions=excl)
            result = res.to_dict()
            probs, hist, dists = res.tag_probabilities, res.histogram, res.classical_distances
        t2 = time.perf_counter()
        classical = classical_align(reference, query)
        t3 = time.perf_counter()
        runs.append({
            "query": query,
            "seed": run_cfg.seed,
            "exclusions": list(excl),
            "result": result,
            "classical": classical.to_dict(),
            "timing": {"quantum_s": t2 - t1, "classical_s": t3 - t2},
            "_csv": (probs, hist, dists),
        })

    if args.format == "csv":
        if args.boyer:
            header = ["query", "tag", "verified", "rounds"]
            rows = [[r["query"], r["result"]["tag"], r["result"]["verified"], r["result"]["rounds"]] for r in runs]
            return _csv_text(header, rows)
        header = ["tag", "exact_probability", "shot_count", "classical_distance"]
        if len(runs) > 1:
            header = ["query"] + header
        rows = []
        for r in runs:
            probs, hist, dists = r["_csv"]
            for tag, p in enumerate(probs):
                row = [tag, repr(float(p)), hist.get(tag, 0), dists.get(tag, "")]
                rows.append(([r["query"]] if len(runs) > 1 else []) + row)
        return _csv_text(header, rows)

    for r in runs:
        del r["_csv"]
    report = _header("align")
    report.update({
        "reference": {"id": ref_id, "length": len(reference)},
        "config": _config_dict(cfg),
        "runs": runs,
        "timing": {"load_s": load_s},
    })
    return _dump_json(report)


# -- baseline ----------------------------------------------------------------

def cmd_baseline(args):
    ref_id, reference = _load_reference(args)
    queries = _load_queries(args)
    runs = []
    for query in queries:
        if len(query) > len(reference):
            raise CliError(f"query {query!r} is longer than the reference ({len(reference)} bases)")
        t0 = time.perf_counter()
        res = classical_align(reference, query)
        runs.append({"query": query, "classical": res.to_dict(), "timing": {"classical_s": time.perf_counter() - t0}})
    if args.format == "csv":
        rows = []
        for r in runs:
            m = len(r["query"])
            for i, d in enumerate(r["classical"]["distances"]):
                rows.append([r["query"], i, reference[i:i + m], d, int(i in r["classical"]["min_indices"])])
        return _csv_text(["query", "index", "window", "distance", "is_min"], rows)
    report = _header("baseline")
    report.update({"reference": {"id": ref_id, "length": len(reference)}, "runs": runs})
    return _dump_json(report)


# -- estimate ----------------------------------------------------------------

def cmd_estimate(args):
    est = estimate(args.A, args.N, args.M).to_dict()
    if args.format == "csv":
        rows = [["q_d", est["q_d"]], ["q_t", est["q_t"]], ["Q", est["Q"]], ["query_qsd", est["query_qsd"]]]
        for part in ("init_hamming", "memory_mark", "grover_gate"):
            rows.extend([f"{part}.{k}", v] for k, v in est[part].items())
        return _csv_text(["quantity", "value"], rows)
    report = _header("estimate")
    report["estimate"] = est
    return _dump_json(report)


# -- circuit text ------------------------------------------------------------

STAGES = ("init", "hamming", "diffusion", "memory-oracle", "query-oracle")


def cmd_emit_qasm(args):
    _, reference = _load_reference(args)
    query = normalize(args.query) if args.query else None
    m = len(query) if query else args.M
    if m is None:
        raise CliError("give --query or -M to fix the pattern length")
    if query is None and args.stage in ("hamming", "memory-oracle", "query-oracle") or (
        query is None and args.stage == "diffusion" and args.diffusion == Diffusion.MEMORY.value
    ):
        raise CliError(f"stage {args.stage!r} needs --query")
    if m > len(reference):
        raise CliError(f"pattern length {m} exceeds reference length {len(reference)}")
    db = QuantumDatabase.from_reference(reference, m, exclude=_exclusions(args, reference, m))
    n = db.num_qubits
    if args.stage == "init":
        circuit = build_qpd_circuit(db)
    elif args.stage == "hamming":
        circuit = build_hamming_evolution(query, db)
    elif args.stage == "memory-oracle":
        circuit = Circuit(n, tuple(build_memory_oracle(db, query)), "memory-oracle")
    elif args.stage == "diffusion":
        if args.diffusion == Diffusion.MEMORY.value:
            ops = build_state_reflection(build_database_circuit(db, query))
        else:
            ops = build_diffusion(n, db.tag_qubits + db.data_qubits)
        circuit = Circuit(n, tuple(ops), "diffusion")
    else:
        oracle = build_query_oracle(DistributedQuery(db.q_d, args.gamma), db.data_qubits)
        circuit = Circuit(n, (oracle,), "query-oracle")
    return serialize(circuit)


def _qubit_list(text, num_qubits):
    if text is None:
        return tuple(range(num_qubits))
    try:
        qubits = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise CliError(f"bad --qubits-list {text!r}") from exc
    return qubits


def cmd_run_qasm(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {args.file}: {exc}") from exc
    circuit = parse(text, name=args.file)
    t0 = time.perf_counter()
    state = execute(circuit, new_state(circuit.num_qubits))
    qubits = _qubit_list(args.qubits_list, circuit.num_qubits)
    dist = marginal(state, qubits)
    hist = sample_distribution(dist, args.shots, args.seed)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        rows = [[j, repr(float(p)), hist.get(j, 0)] for j, p in enumerate(dist)]
        return _csv_text(["outcome", "exact_probability", "shot_count"], rows)
    report = _header("run-qasm")
    report.update({
        "file": args.file,
        "num_qubits": circuit.num_qubits,
        "num_ops": len(circuit),
        "qubits": list(qubits),
        "shots": args.shots,
        "seed": args.seed,
        "marginal": [float(p) for p in dist],
        "histogram": {str(k): v for k, v in hist.items()},
        "timing": {"execute_s": elapsed},
    })
    return _dump_json(report)


# -- parser ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="qibam", description="Quantum indexed associative-memory DNA alignment")
    parser.add_argument("--version", action="version", version=f"qibam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", help="run the quantum search for one or more reads")
    _add_reference(p)
    _add_query(p)
    p.add_argument("--gamma", type=float, default=0.25)
    p.add_argument("--schedule", choices=[s.value for s in Schedule], default=Schedule.TWO_PHASE.value)
    p.add_argument("--diffusion", choices=[d.value for d in Diffusion], default=Diffusion.MEMORY.value)
    it = p.add_mutually_exclusive_group()
    it.add_argument("--iterations", type=int, default=1, help="fixed iteration count")
    it.add_argument("--auto", type=int, nargs="?", const=1, metavar="NSOL",
                    help="optimal count for NSOL known solutions (default 1)")
    it.add_argument("--boyer", action="store_true", help="randomized iteration counts with verification")
    p.add_argument("--max-rounds", type=int, default=30)
    p.add_argument("--shots", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exclude-last", action="store_true", help="withhold the final window from the database")
    _add_output(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("baseline", help="classical brute-force Hamming alignment")
    _add_reference(p)
    _add_query(p)
    _add_output(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("estimate", help="closed-form qubit and gate counts")
    p.add_argument("-A", type=int, required=True, help="alphabet size")
    p.add_argument("-N", type=int, required=True, help="reference length")
    p.add_argument("-M", type=int, required=True, help="read length")
    _add_output(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("emit-qasm", help="write one pipeline stage as circuit text")
    p.add_argument("--stage", choices=STAGES, required=True)
    _add_reference(p)
    p.add_argument("--query")
    p.add_argument("-M", type=int, help="pattern length when no query is given")
    p.add_argument("--gamma", type=float, default=0.25)
    p.add_argument("--diffusion", choices=[d.value for d in Diffusion], default=Diffusion.MEMORY.value)
    p.add_argument("--exclude-last", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_emit_qasm)

    p = sub.add_parser("run-qasm", help="execute a circuit file on |0...0>")
    p.add_argument("file")
    p.add_argument("--qubits-list", help="comma-separated qubits to read out (default: all)")
    p.add_argument("--shots", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_run_qasm)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except CliError as exc:
        print(f"qibam: error: {exc}", file=sys.stderr)
        return exc.code
    except UnsupportedOpForSerialization as exc:
        print(f"qibam: error: {exc}", file=sys.stderr)
        return EXIT_SERIALIZE
    except (QubitCeilingExceeded, DimensionTooLarge) as exc:
        print(f"qibam: error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (QibamError, FastaError, OSError, ValueError) as exc:
        print(f"qibam: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(text, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
