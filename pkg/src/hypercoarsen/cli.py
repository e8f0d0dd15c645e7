"""Command-line front end.

    hypercoarsen coarsen --input ibm01.hgr --out run/ --levels 3 --delta q:0.5
    hypercoarsen eval    --input ibm01.hgr --clusters run/clusters.txt --out eval/
    hypercoarsen resist  --input ibm01.hgr --out res/
    hypercoarsen rate    --input ibm01.hgr --out rate/

Every artifact starts with a ``% run-config {...}`` line holding the full
configuration as JSON.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .coarsen import CoarsenConfig, ContractionPolicy, coarsen_multilevel, level_rows, level_seed, write_levels
from .embedding import EmbeddingConfig, build_embedding_pool, dump_pool
from .errors import HyperCoarsenError
from .expansion import DEFAULT_MAX_CLIQUE_CARDINALITY
from .hypergraph import parse_hgr, read_clusters, write_clusters, write_hgr
from .metrics import evaluate_clustering, write_rating
from .resistance import estimate_resistances, write_resistances

logger = logging.getLogger("hypercoarsen")

COMMANDS = ("coarsen", "eval", "resist", "rate")
HEADER_TAG = "run-config"


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    out: str
    rho: int = 3
    levels: int = 3
    delta: str = "q:0.5"
    seed: int = 42
    local_clustering: bool = True
    max_clique_cardinality: int = DEFAULT_MAX_CLIQUE_CARDINALITY
    clusters: str | None = None
    dump_pool: bool = False
    figures: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.rho < 1:
            raise ValueError("rho must be >= 1")
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if self.max_clique_cardinality < 2:
            raise ValueError("max clique cardinality must be >= 2")
        self.policy  # validates the delta string

    @property
    def policy(self) -> ContractionPolicy:
        return ContractionPolicy.parse(self.delta)

    def header(self) -> str:
        return f"{HEADER_TAG} " + json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_header(cls, text: str) -> "RunConfig":
        """Recover the config from the first ``% run-config`` line of an artifact."""
        for line in text.splitlines():
            body = line.lstrip("%").strip()
            if body.startswith(HEADER_TAG + " "):
                data = json.loads(body[len(HEADER_TAG) + 1:])
                known = {f.name for f in fields(cls)}
                return cls(**{k: v for k, v in data.items() if k in known})
        raise ValueError("no run-config header found")

    def coarsen_config(self) -> CoarsenConfig:
        return CoarsenConfig(
            levels=self.levels,
            rho=self.rho,
            seed=self.seed,
            policy=self.policy,
            local_clustering=self.local_clustering,
            embedding=EmbeddingConfig(max_clique_cardinality=self.max_clique_cardinality),
        )


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _load(cfg: RunConfig):
    with open(cfg.input, encoding="ascii") as fh:
        H = parse_hgr(fh)
    if H.dropped_singletons:
        logger.info("dropped %d singleton hyperedge(s)", H.dropped_singletons)
    return H


def run(cfg: RunConfig) -> dict[str, Path]:
    """Execute one command and return the written artifacts by name."""
    from . import plots

    H = _load(cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    head = [cfg.header()]
    written: dict[str, Path] = {}

    def emit(name, text):
        written[name] = out / name
        _write(written[name], text)

    if cfg.command == "coarsen":
        hier = coarsen_multilevel(H, cfg.coarsen_config())
        report = evaluate_clustering(H, hier.composed_clusters)
        emit("clusters.txt", write_clusters(hier.composed_clusters, head))
        emit("coarse.hgr", write_hgr(hier.coarse, None, head))
        emit("levels.tsv", write_levels(hier, head))
        emit("report.tsv", report.to_tsv(head))
        if cfg.dump_pool:
            pool = build_embedding_pool(H, cfg.rho, level_seed(cfg.seed, 0), cfg.coarsen_config().embedding)
            emit("pool.txt", dump_pool(pool, head))
        if cfg.figures:
            written["levels.png"] = plots.plot_levels(level_rows(hier), out / "levels.png")
            written["conductance.png"] = plots.plot_conductance(
                report.per_cluster_phi, out / "conductance.png", report.phi_avg)
        print(report.to_table())
    elif cfg.command == "eval":
        if not cfg.clusters:
            raise HyperCoarsenError("missing-argument", "eval requires --clusters")
        with open(cfg.clusters, encoding="ascii") as fh:
            A = read_clusters(fh, H.num_vertices)
        report = evaluate_clustering(H, A)
        emit("report.tsv", report.to_tsv(head))
        if cfg.figures:
            written["conductance.png"] = plots.plot_conductance(
                report.per_cluster_phi, out / "conductance.png", report.phi_avg)
        print(report.to_table())
    else:
        pool = build_embedding_pool(H, cfg.rho, level_seed(cfg.seed, 0), cfg.coarsen_config().embedding)
        R = estimate_resistances(H, pool)
        if cfg.dump_pool:
            emit("pool.txt", dump_pool(pool, head))
        if cfg.command == "resist":
            emit("resistances.tsv", write_resistances(R, head))
            if cfg.figures:
                written["resistances.png"] = plots.plot_resistances(R.r, out / "resistances.png")
        else:
            emit("rating.tsv", write_rating(H, R, head))
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercoarsen", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="hMETIS .hgr file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--rho", type=int, default=3, help="Krylov order per expansion (default 3)")
        p.add_argument("--levels", type=int, default=3)
        p.add_argument("--delta", default="q:0.5", help="contraction threshold: abs:x or q:y (default q:0.5)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--no-local", dest="local_clustering", action="store_false",
                       help="disable local clustering of isolated nodes")
        p.add_argument("--max-clique", dest="max_clique_cardinality", type=int,
                       default=DEFAULT_MAX_CLIQUE_CARDINALITY)
        p.add_argument("--dump-pool", action="store_true", help="also write the embedding pool as pool.txt")
        p.add_argument("--no-figures", dest="figures", action="store_false")
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "eval":
            p.add_argument("--clusters", required=True, help="cluster file, one id per line")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    opts = vars(args)
    opts.pop("verbose")
    try:
        cfg = RunConfig(**opts)
        run(cfg)
    except HyperCoarsenError as exc:
        print(exc.one_line(), file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
