from __future__ import absolute_import
from __future__ import print_function
import argparse
import json
import sys
import traceback

from . import log
from . import settings
from .engine import FORMATS, Engine, EngineConfig
from .env import Environment
from .errors import AbortError
from .roots import TYPES
from .verify import CHECKS, dump_tables, format_reports, format_table, run_suite

MYPY = False
if MYPY:
    from typing import Any, List, Optional, Text

logger = log.get_logger(__name__)
env = Environment()

TABLES = ("basis", "hilbert", "schubert", "invariants")


def instance_parser():
    # type: () -> argparse.ArgumentParser
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--type", dest="type_label", default="A", choices=TYPES,
                        help="Cartan type of the root system")
    parser.add_argument("--rank", type=int, default=2, help="Rank of the root system")
    parser.add_argument("--max-degree", type=int, default=None,
                        help="Build the Nichols algebra only up to this degree")
    parser.add_argument("--c-long", default=None, help="Constant c on long roots, e.g. 3/2")
    parser.add_argument("--c-short", default=None, help="Constant c on short roots")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random samples")
    parser.add_argument("--cache", dest="cache_dir", default=None,
                        help="Directory for cached Nichols bases")
    parser.add_argument("--no-cache", dest="use_cache", action="store_false", default=True,
                        help="Build the basis in memory without reading or writing the cache")
    parser.add_argument("--format", dest="output_format", default="json", choices=FORMATS,
                        help="Output format")
    parser.add_argument("--threads", type=int, default=None,
                        help="Number of checks to run at once")
    parser.add_argument("--timings", action="store_true", default=None,
                        help="Include wall time in reports")
    return parser


def get_parser():
    # type: () -> argparse.ArgumentParser
    parser = argparse.ArgumentParser(prog="nqf")
    subparsers = parser.add_subparsers()
    parser.add_argument("--pdb", action="store_true", help="Run in pdb")
    parser.add_argument("--profile", action="store", help="Run in profile, dump stats to "
                        "specified filename")
    parser.add_argument("--config", action="append", help="Set a config option")
    parser.add_argument("--quiet", action="store_true", help="Only log warnings to stderr")
    common = [instance_parser()]

    parser_basis = subparsers.add_parser("basis", parents=common,
                                         help="Print the Nichols algebra basis")
    parser_basis.set_defaults(func=do_basis)

    parser_hilbert = subparsers.add_parser("hilbert", parents=common,
                                           help="Print the Hilbert series")
    parser_hilbert.set_defaults(func=do_hilbert)

    parser_schubert = subparsers.add_parser("schubert", parents=common,
                                            help="Print classical and quantized classes")
    parser_schubert.add_argument("--w", dest="word", default=None,
                                 help="Only the element with this word, e.g. 1,2,1")
    parser_schubert.set_defaults(func=do_schubert)

    parser_invariants = subparsers.add_parser("invariants", parents=common,
                                              help="Print quantum fundamental invariants")
    parser_invariants.set_defaults(func=do_invariants)

    parser_verify = subparsers.add_parser("verify", parents=common,
                                          help="Run identity checks")
    parser_verify.add_argument("checks", nargs="*",
                               help="Checks to run, or all (one of %s)" %
                               ", ".join(sorted(CHECKS)))
    parser_verify.set_defaults(func=do_verify)

    parser_dump = subparsers.add_parser("dump", parents=common, help="Dump a table")
    parser_dump.add_argument("what", choices=TABLES, help="Table to dump")
    parser_dump.set_defaults(func=do_dump)

    return parser


def make_engine(type_label, rank, **kwargs):
    # type: (Text, int, **Any) -> Engine
    names = ("max_degree", "c_long", "c_short", "seed", "cache_dir", "output_format",
             "threads", "timings", "use_cache")
    engine_config = EngineConfig.from_config(env.config, type_label, rank,
                                             **{name: kwargs.get(name) for name in names})
    logger.debug("Engine configuration %s" % json.dumps(engine_config.to_dict(), sort_keys=True))
    return Engine(engine_config, env.config)


def print_table(engine, what):
    # type: (Engine, Text) -> None
    doc = dump_tables(engine, what)
    print(format_table(doc, engine.engine_config.output_format))


def do_basis(**kwargs):
    # type: (**Any) -> int
    print_table(make_engine(**kwargs), "basis")
    return 0


def do_hilbert(**kwargs):
    # type: (**Any) -> int
    print_table(make_engine(**kwargs), "hilbert")
    return 0


def do_schubert(word=None, **kwargs):
    # type: (Optional[Text], **Any) -> int
    engine = make_engine(**kwargs)
    doc = dump_tables(engine, "schubert")
    if word is not None:
        try:
            letters = [int(item) - 1 for item in word.split(",") if item.strip()]
        except ValueError:
            raise AbortError("--w takes a comma separated list of simple reflections")
        if any(not 0 <= i < engine.rs.rank for i in letters):
            raise AbortError("--w letters must be between 1 and %d" % engine.rs.rank)
        label = engine.rs.from_word(letters).word_label()
        doc["rows"] = [row for row in doc["rows"] if row["w"] == label]
    print(format_table(doc, engine.engine_config.output_format))
    return 0


def do_invariants(**kwargs):
    # type: (**Any) -> int
    print_table(make_engine(**kwargs), "invariants")
    return 0


def do_dump(what, **kwargs):
    # type: (Text, **Any) -> int
    print_table(make_engine(**kwargs), what)
    return 0


def do_verify(checks, **kwargs):
    # type: (List[Text], **Any) -> int
    engine = make_engine(**kwargs)
    try:
        reports = run_suite(engine, checks)
    except ValueError as e:
        raise AbortError(str(e))
    if reports:
        print(format_reports(reports, engine.engine_config.output_format))
    failed = [report.check for report in reports if report.failed]
    if failed:
        logger.error("Failed checks: %s" % ", ".join(failed))
        return 1
    return 0


def set_config(opts):
    # type: (List[Text]) -> None
    for opt in opts:
        try:
            keys, value = opt.split("=", 1)
            section, name = keys.split(".", 1)
        except ValueError:
            raise AbortError("--config takes section.name=value, got %r" % opt)
        logger.info("Setting config option %s to %s" % (keys, value))
        settings.set_value(env.config, section, name, value)


def main(argv=None):
    # type: (Optional[List[Text]]) -> int
    parser = get_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_usage()
        return 2

    if args.quiet:
        log.set_stream_level("WARNING")

    if args.profile:
        import cProfile
        prof = cProfile.Profile()
        prof.enable()

    env.ensure_config()

    kwargs = vars(args).copy()
    for name in ("func", "pdb", "profile", "config", "quiet"):
        kwargs.pop(name)

    try:
        if args.config:
            set_config(args.config)
        return args.func(**kwargs)
    except AbortError as e:
        logger.error(e.message)
        if args.pdb:
            traceback.print_exc()
            import pdb
            pdb.post_mortem()
        return 1
    except Exception:
        if args.pdb:
            traceback.print_exc()
            import pdb
            pdb.post_mortem()
        else:
            raise
    finally:
        if args.profile:
            prof.dump_stats(args.profile)
            prof.print_stats()
    return 1


if __name__ == "__main__":
    sys.exit(main())
