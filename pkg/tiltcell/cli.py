"""
Command line front end for tiltcell.

    tiltcell roots --type G2
    tiltcell tensor --type A1 --l 5 1 1
    tiltcell cells --type G2 --L 14 --format svg --out g2_cells.svg
    tiltcell quotient-ring --type G2 --l 7 --cell subregular
"""

import argparse
from dataclasses import dataclass
import logging
import os
import sys

import polars as pl

from .core.affine import affine_group, parse_word
from .core.cells import TensorIdeal, check_stability, export_graph
from .core.characters import dominance_height, tensor_weyl_factors, weight_multiplicities, weyl_dim
from .core.constants import DEFAULT_TRUNCATION, EXIT_INTERNAL_ERROR, TILTCELL_CACHE
from .core.errors import InvalidConfigError, TiltcellError
from .core.hecke import AntisphericalModule
from .core.rootdata import dump, root_system_from_type
from .core.svg import emit_svg_alcoves
from .core.tilting import TiltingCategory, radical_basis, radical_dim
from .core.utils import dump_json, write_atomic, write_graph

logger = logging.getLogger(__name__)

COMMANDS = [
    "roots",
    "char",
    "tensor",
    "alcoves",
    "klbasis",
    "cells",
    "tilting-char",
    "decompose",
    "ideal-check",
    "quotient-ring",
    "radical",
    "cache",
]
## commands whose answers depend on the level l
LEVEL_COMMANDS = ["alcoves", "tilting-char", "decompose", "ideal-check", "quotient-ring", "radical"]
FORMATS = {
    "roots": ["json"],
    "char": ["json", "csv"],
    "tensor": ["json", "csv"],
    "alcoves": ["json", "csv", "svg"],
    "klbasis": ["json", "text"],
    "cells": ["json", "csv", "svg"],
    "tilting-char": ["json", "csv"],
    "decompose": ["json", "csv"],
    "ideal-check": ["json"],
    "quotient-ring": ["json", "csv"],
    "radical": ["json"],
    "cache": ["json"],
}


@dataclass(frozen=True)
class JobConfig:
    command: str
    type: str
    level: int = None
    truncation: int = DEFAULT_TRUNCATION
    cache_dir: str = str(TILTCELL_CACHE)
    out: str = None
    format: str = "json"
    quiet: bool = False
    weights: tuple = ()
    words: tuple = ()
    cells: tuple = ("subregular",)
    inclusive: bool = False
    action: str = "list"
    graph_dir: str = None

    def validate(self):
        if self.command not in COMMANDS:
            raise InvalidConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS[self.command]:
            raise InvalidConfigError(
                f"format {self.format!r} is not available for {self.command}, use one of {FORMATS[self.command]}"
            )
        if self.command in LEVEL_COMMANDS and self.level is None:
            raise InvalidConfigError(f"{self.command} needs the level --l")
        if self.truncation is None or self.truncation < 1:
            raise InvalidConfigError(f"truncation --L must be at least 1, got {self.truncation}")
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
        except OSError as err:
            raise InvalidConfigError(f"cannot create cache directory {self.cache_dir}: {err}")
        if not os.access(self.cache_dir, os.W_OK):
            raise InvalidConfigError(f"cache directory {self.cache_dir} is not writable")
        return self


def parse_weight(text: str, rank: int) -> tuple:
    try:
        weight = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InvalidConfigError(f"cannot parse weight {text!r}, expected comma separated integers")
    if len(weight) != rank:
        raise InvalidConfigError(f"weight {text!r} needs {rank} coordinates")
    return weight


def _default_level(root_system) -> int:
    """smallest odd l > h, prime to 3 for G2; KL data does not depend on it"""
    level = root_system.coxeter_number + 1
    while level % 2 == 0 or (root_system.datum.family == "G" and level % 3 == 0):
        level += 1
    return level


class Job:
    """lazily built objects shared by one command"""

    def __init__(self, config: JobConfig):
        self.config = config
        self.root_system = root_system_from_type(config.type)
        if config.level is not None and config.level <= self.root_system.coxeter_number:
            raise InvalidConfigError(
                f"level l = {config.level} must exceed h = {self.root_system.coxeter_number} for {self.root_system.name}"
            )
        self._group = None
        self._module = None
        self._category = None

    @property
    def progress(self) -> bool:
        return not self.config.quiet and sys.stderr.isatty()

    @property
    def group(self):
        if self._group is None:
            level = self.config.level or _default_level(self.root_system)
            self._group = affine_group(self.root_system, level, progress=self.progress)
        return self._group

    @property
    def module(self):
        if self._module is None:
            self._module = AntisphericalModule(self.group, cache_dir=self.config.cache_dir)
        return self._module

    @property
    def category(self):
        if self._category is None:
            self._category = TiltingCategory(self.module)
        return self._category

    def weights(self, count: int = None) -> list:
        res = [parse_weight(text, self.root_system.rank) for text in self.config.weights]
        if count is not None and len(res) != count:
            raise InvalidConfigError(f"{self.config.command} needs {count} weight(s), got {len(res)}")
        return res

    def generators(self) -> list:
        return [self._generator(cell) for cell in self.config.cells]

    def _generator(self, cell: str):
        if cell == "identity":
            return self.group.rep(self.group.identity)
        if cell == "subregular":
            return self.group.rep(self.group.generators[0])
        x = self.group.rep_from_word(parse_word(cell))
        if not self.group.is_minimal(x.element):
            raise InvalidConfigError(f"--cell {cell} does not name an element of W^f")
        return x

    def ideal(self) -> TensorIdeal:
        return TensorIdeal(
            self.module, self.generators(), self.config.truncation, strict=not self.config.inclusive
        )


def _weight_table(pairs, columns) -> pl.DataFrame:
    return pl.DataFrame(
        [(str(list(nu)), m) for nu, m in pairs], schema=columns, orient="row"
    )


def _roots(job: Job):
    return dump(job.root_system)


def _char(job: Job):
    (weight,) = job.weights(1)
    character = weight_multiplicities(job.root_system, weight)
    pairs = sorted(
        character.items(), key=lambda item: (-dominance_height(job.root_system, item[0]), item[0])
    )
    if job.config.format == "csv":
        return _weight_table(pairs, ["weight", "multiplicity"])
    return {
        "weight": list(weight),
        "dimension": weyl_dim(job.root_system, weight),
        "multiplicities": [[list(nu), m] for nu, m in pairs],
    }


def _tensor(job: Job):
    weight, other = job.weights(2)
    factors = tensor_weyl_factors(job.root_system, weight, other)
    pairs = sorted(factors.items(), key=lambda item: (-dominance_height(job.root_system, item[0]), item[0]))
    if job.config.format == "csv":
        return _weight_table(pairs, ["weight", "multiplicity"])
    return {"weights": [list(weight), list(other)], "factors": [[list(nu), m] for nu, m in pairs]}


def _alcove_record(x) -> dict:
    return {
        "word": list(x.word),
        "length": x.length,
        "finite_part": [list(row) for row in x.element.finite],
        "translation": list(x.element.translation),
    }


def _alcoves(job: Job):
    ball = job.group.ball(job.config.truncation)
    if job.config.format == "svg":
        return emit_svg_alcoves(job.group, ball, {x: f"length {x.length}" for x in ball})
    if job.config.format == "csv":
        return pl.DataFrame(
            [(x.label, x.length, str(list(x.element.translation))) for x in ball],
            schema=["word", "length", "translation"],
            orient="row",
        )
    return {"L": job.config.truncation, "alcoves": [_alcove_record(x) for x in ball]}


def format_kl_element(x, vector) -> str:
    """N[word] = N[word'] * (poly) + ... with the longest terms first"""
    terms = [f"N[{y.label}] * ({vector[y]})" for y in reversed(vector.support())]
    return f"N[{x.label}] = " + " + ".join(terms)


def _klbasis(job: Job):
    if job.config.words:
        elements = [job.group.rep_from_word(parse_word(w)) for w in job.config.words]
    else:
        elements = job.group.ball(job.config.truncation)
    lines = [format_kl_element(x, job.module.kl_element(x)) for x in elements]
    if job.config.format == "text":
        return "\n".join(lines) + "\n"
    return {
        "L": job.config.truncation,
        "elements": [
            {
                "word": list(x.word),
                "terms": [
                    [list(y.word), [list(pair) for pair in job.module.kl_element(x)[y].pairs()]]
                    for y in job.module.kl_element(x).support()
                ],
            }
            for x in elements
        ],
        "text": lines,
    }


def _cells(job: Job):
    partition, _ = check_stability(job.module, job.config.truncation)
    if job.config.graph_dir:
        write_graph(*export_graph(partition, job.group), resource_path=job.config.graph_dir)
    if job.config.format == "svg":
        categories = {x: f"cell {i}" for x, i in partition.cell_of.items()}
        return emit_svg_alcoves(job.group, partition.graph.nodes, categories, title=f"{job.group.name} cells, L = {job.config.truncation}")
    if job.config.format == "csv":
        return pl.DataFrame(
            [(x.label, x.length, partition.cell_of[x]) for x in job.group.ball(job.config.truncation)],
            schema=["word", "length", "cell"],
            orient="row",
        )
    return {"type": job.root_system.name, **partition.to_dict()}


def _tilting_char(job: Job):
    (weight,) = job.weights(1)
    character = job.category.tilting_indecomposable(weight)
    if job.config.format == "csv":
        return _weight_table(character.sorted_factors(job.root_system), ["weight", "multiplicity"])
    longest, w, _ = job.category.longest_representative(weight)
    return {
        "weight": list(weight),
        "alcove": list(w.word),
        "longest": list(longest.word),
        "dimension": character.dimension(job.root_system),
        **character.to_dict(job.root_system),
    }


def _decompose(job: Job):
    weight, other = job.weights(2)
    summands = job.category.tensor_decompose(weight, other)
    pairs = sorted(summands.items(), key=lambda item: (-dominance_height(job.root_system, item[0]), item[0]))
    if job.config.format == "csv":
        return _weight_table(pairs, ["weight", "multiplicity"])
    return {"weights": [list(weight), list(other)], "summands": [[list(nu), k] for nu, k in pairs]}


def _ideal_check(job: Job):
    ideal = job.ideal()
    res = []
    for weight in job.weights():
        longest, _, _ = job.category.longest_representative(weight)
        res.append(
            {
                "weight": list(weight),
                "longest": list(longest.word),
                "member": job.category.ideal_membership(weight, ideal),
            }
        )
    return {"cells": list(job.config.cells), "strict": ideal.strict, "L": ideal.truncation, "results": res}


def _radical_payload(ring) -> dict:
    basis = radical_basis(ring)
    return {
        "dimension": ring.dimension,
        "radical_dimension": radical_dim(ring),
        "radical_basis": [[str(c) for c in vector] for vector in basis],
    }


def _quotient_ring(job: Job):
    ideal = job.ideal()
    ring = job.category.quotient_ring(ideal)
    if job.config.format == "csv":
        return ring.to_frame()
    return {
        "cells": list(job.config.cells),
        "strict": ideal.strict,
        "L": ideal.truncation,
        "surviving_alcoves": [list(x.word) for x in ideal.surviving_alcoves()],
        "unit_law": ring.check_unit(),
        "commutative": ring.check_commutativity(),
        "associative_sample": ring.check_associativity(),
        **ring.to_dict(),
        **_radical_payload(ring),
    }


def _radical(job: Job):
    ideal = job.ideal()
    ring = job.category.quotient_ring(ideal)
    return {"cells": list(job.config.cells), "L": ideal.truncation, "basis": [list(mu) for mu in ring.basis], **_radical_payload(ring)}


def _cache(job: Job):
    module = job.module
    action = job.config.action
    if action == "list":
        return {"path": module.cache_path, "entries": module.list_cache()}
    if action == "clear":
        module.clear_cache()
        return {"path": module.cache_path, "entries": []}
    if action == "verify":
        return {"path": module.cache_path, **module.verify_cache()}
    raise InvalidConfigError(f"unknown cache action {action!r}, use list, clear or verify")


HANDLERS = {
    "roots": _roots,
    "char": _char,
    "tensor": _tensor,
    "alcoves": _alcoves,
    "klbasis": _klbasis,
    "cells": _cells,
    "tilting-char": _tilting_char,
    "decompose": _decompose,
    "ideal-check": _ideal_check,
    "quotient-ring": _quotient_ring,
    "radical": _radical,
    "cache": _cache,
}


def run_command(config: JobConfig) -> tuple:
    """
    Run one command.

    Returns:
        (exit code, output text). Library errors become a JSON error object
        with the exit code of the error kind.
    """
    try:
        config.validate()
        job = Job(config)
        res = HANDLERS[config.command](job)
        if job._module is not None and config.command != "cache":
            job.module.save_cache()
    except TiltcellError as err:
        logger.error(f"{config.command} failed: {err}")
        return err.exit_code, dump_json({"command": config.command, "error": err.to_dict()})
    except Exception as err:
        logger.exception(f"{config.command} failed with an internal error")
        return EXIT_INTERNAL_ERROR, dump_json(
            {"command": config.command, "error": {"kind": "internal-error", "message": repr(err)}}
        )
    if isinstance(res, pl.DataFrame):
        return 0, res.write_csv()
    if isinstance(res, str):
        return 0, res
    return 0, dump_json({"command": config.command, "type": job.root_system.name, "l": config.level, **res})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="root system, e.g. G2 or A1")
    common.add_argument("--l", type=int, default=None, dest="level", help="level l > h")
    common.add_argument("--L", type=int, default=DEFAULT_TRUNCATION, dest="truncation", help="truncation length")
    common.add_argument(
        "--cache-dir",
        default=os.getenv("TILTCELL_CACHE") or str(TILTCELL_CACHE),
        help="directory for KL caches (env TILTCELL_CACHE)",
    )
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--format", default="json", choices=["json", "csv", "svg", "text"])
    common.add_argument("--quiet", action="store_true", help="no progress bars, warnings only")

    parser = argparse.ArgumentParser(prog="tiltcell", description="tilting characters, cells and tensor ideals")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("roots", parents=[common], help="positive roots, coroots, rho and h")
    for name, count, text in [
        ("char", 1, "weight multiplicities of V(lambda)"),
        ("tensor", 2, "Weyl factors of V(lambda) x V(mu)"),
        ("tilting-char", 1, "Weyl factors of Q(mu)"),
        ("decompose", 2, "indecomposable summands of Q(lambda) x Q(mu)"),
    ]:
        sub = subparsers.add_parser(name, parents=[common], help=text)
        sub.add_argument("weights", nargs=count, help="weights as comma separated coordinates")
    subparsers.add_parser("alcoves", parents=[common], help="the ball of W^f of length at most L")
    klbasis = subparsers.add_parser("klbasis", parents=[common], help="KL basis elements")
    klbasis.add_argument("words", nargs="*", help="reduced words, e.g. 010; the whole ball when omitted")
    cells = subparsers.add_parser("cells", parents=[common], help="right cells of the ball")
    cells.add_argument("--graph", dest="graph_dir", default=None, help="also write nodes.tsv/edges.tsv here")
    for name, text in [
        ("ideal-check", "membership of Q(mu) in a cell ideal"),
        ("quotient-ring", "Grothendieck ring of the quotient by a cell ideal"),
        ("radical", "radical of the quotient ring"),
    ]:
        sub = subparsers.add_parser(name, parents=[common], help=text)
        sub.add_argument(
            "--cell",
            action="append",
            dest="cells",
            default=None,
            help="identity, subregular or a reduced word in a generating cell; repeat for a sum of cell ideals",
        )
        sub.add_argument("--inclusive", action="store_true", help="use y <=_R A instead of y <_R A")
        if name == "ideal-check":
            sub.add_argument("weights", nargs="+", help="weights as comma separated coordinates")
    cache = subparsers.add_parser("cache", parents=[common], help="list, clear or verify the KL cache")
    cache.add_argument("action", choices=["list", "clear", "verify"])
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    return JobConfig(
        command=args.command,
        type=args.type,
        level=args.level,
        truncation=args.truncation,
        cache_dir=args.cache_dir,
        out=args.out,
        format=args.format,
        quiet=args.quiet,
        weights=tuple(getattr(args, "weights", ()) or ()),
        words=tuple(getattr(args, "words", ()) or ()),
        cells=tuple(getattr(args, "cells", None) or ["subregular"]),
        inclusive=getattr(args, "inclusive", False),
        action=getattr(args, "action", "list"),
        graph_dir=getattr(args, "graph_dir", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    if config.quiet:
        logging.getLogger("tiltcell").setLevel(logging.WARNING)
    code, text = run_command(config)
    if config.out and code == 0:
        write_atomic(config.out, text)
        logger.info(f"wrote {config.command} result to {config.out}")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
