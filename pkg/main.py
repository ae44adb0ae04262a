#!/usr/bin/env python3
"""
Error-Correcting Gray Codes - Main Entry Point

Encodes and decodes with noise-robust Gray codes, runs channel experiments
against the tail bounds, and builds/queries differentially private histograms.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from config.settings import Config
from core.bitcore import BitString, RandomSource
from core.logger import Logger
from core.trial_runner import TrialRunner
from codes.factory import CodecFactory, DescriptorError
from dphist.params import HistParams
from dphist.serialization import load, read_counts, save
from dphist.sketch import build, sketch_codec
from evaluation.experiments import tail_experiment
from evaluation.failure import distance_lower_bound, exact_failure_prob, min_distance
from linear.counting import brute_force_count, count_codewords
from linear.matrix import read_generator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_ACCEPTANCE = 3


class UsageError(Exception):
    """Malformed command-line input."""


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_arguments(argv: Optional[List[str]] = None):
    """Parse command-line arguments."""
    parser = ArgumentParser(
        description='Error-correcting Gray codes, channel experiments and private histograms',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py encode --codec unary:m=5 --value 3
  python main.py decode --codec gray:inner=pairtriple --input 000100000000000000000000000000
  python main.py simulate --codec gray:inner=pairtriple --p 0.05 --trials 100000
  python main.py countcodewords --matrix g.txt --t 3 --verify
  python main.py hist build --eps 2 --universe 65536 --input counts.csv --output sketch.bin
  python main.py hist query --sketch sketch.bin --element 17

Codec descriptors: kind:key=value,... with nested codes as inner=(kind:...).
Kinds: unary, repetition, blockrep, pairtriple, complement, ccd, gray,
linear, repeat3, lgray, expander.
        """
    )

    parser.add_argument('--config', type=str, default='config.yaml',
                        help='Path to configuration file (default: config.yaml)')
    parser.add_argument('--seed', type=int,
                        help='Experiment seed (overrides config and ECGRAY_SEED)')
    parser.add_argument('--workers', type=int,
                        help='Worker threads for Monte Carlo trials (overrides config)')
    parser.add_argument('--log-level', type=str,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level (overrides config)')

    commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    encode = commands.add_parser('encode', help='Print the codeword of a value')
    encode.add_argument('--codec', required=True, help='Codec descriptor or YAML file')
    encode.add_argument('--value', required=True, type=int, help='Value to encode')

    decode = commands.add_parser('decode', help='Print the value decoded from a bit string')
    decode.add_argument('--codec', required=True, help='Codec descriptor or YAML file')
    decode.add_argument('--input', required=True, help="Received word as '0'/'1' text")

    simulate = commands.add_parser('simulate', help='Run a seeded tail experiment')
    simulate.add_argument('--codec', required=True, help='Codec descriptor or YAML file')
    simulate.add_argument('--p', type=float, help='Flip probability (overrides config)')
    simulate.add_argument('--trials', type=int, help='Uniform trials (overrides config)')
    simulate.add_argument('--t-values', type=_int_list, help='Comma-separated thresholds')
    simulate.add_argument('--grid-trials', type=int, help='Trials per adversarial grid value')
    simulate.add_argument('--format', choices=['csv', 'json'], help='Report format')
    simulate.add_argument('--output', type=str, help='Report file (stdout when omitted)')
    simulate.add_argument('--seed', type=int, dest='command_seed',
                          help='Experiment seed (overrides --seed before the command)')

    count = commands.add_parser('countcodewords', help='Cumulative adjacent codeword distance')
    count.add_argument('--matrix', required=True, help='Generator matrix file')
    count.add_argument('--t', required=True, type=int, help='Number of steps')
    count.add_argument('--verify', action='store_true', help='Also compute the brute-force sum')

    distance = commands.add_parser('distance', help='Exact minimum distance of a codec')
    distance.add_argument('--codec', required=True, help='Codec descriptor or YAML file')

    failure = commands.add_parser('failure', help='Exact failure probability and lower bound')
    failure.add_argument('--codec', required=True, help='Codec descriptor or YAML file')
    failure.add_argument('--p', required=True, type=float, help='Flip probability')

    hist = commands.add_parser('hist', help='Private histogram sketches')
    hist_commands = hist.add_subparsers(dest='hist_command', required=True,
                                        parser_class=ArgumentParser)
    hist_build = hist_commands.add_parser('build', help='Build a sketch from element counts')
    hist_build.add_argument('--eps', required=True, type=float, help='Privacy parameter')
    hist_build.add_argument('--universe', required=True, type=int, help='Universe size u')
    hist_build.add_argument('--input', required=True, help='CSV of element,count rows')
    hist_build.add_argument('--output', required=True, help='Sketch file to write')
    hist_build.add_argument('--n', type=int, help='Dataset size bound (default: total count)')
    hist_build.add_argument('--q', type=float, help='Randomized-response probability')
    hist_build.add_argument('--debug', action='store_true',
                            help='Allow q = 0 (no privacy) for utility checks')
    hist_build.add_argument('--seed', type=int, dest='command_seed',
                            help='Sketch seed (overrides --seed before the command)')
    hist_query = hist_commands.add_parser('query', help='Estimate element counts')
    hist_query.add_argument('--sketch', required=True, help='Sketch file')
    hist_query.add_argument('--element', required=True, type=int, nargs='+',
                            help='Element(s) to estimate')

    return parser.parse_args(argv)


def _codec(spec: str, config: Config):
    try:
        return CodecFactory.create(spec, RandomSource(config.seed).split('codec'),
                                   config.expander_settings)
    except DescriptorError as e:
        raise UsageError(str(e)) from e


def _runner(config: Config) -> TrialRunner:
    return TrialRunner(workers=config.workers, chunk_size=config.chunk_size,
                       show_progress=config.show_progress)


def cmd_encode(args, config: Config) -> int:
    codec = _codec(args.codec, config)
    print(codec.encode(args.value))
    return EXIT_OK


def cmd_decode(args, config: Config) -> int:
    codec = _codec(args.codec, config)
    try:
        word = BitString.from_str(args.input)
    except ValueError as e:
        raise UsageError(str(e)) from e
    print(codec.decode(word))
    return EXIT_OK


def cmd_simulate(args, config: Config, logger) -> int:
    codec = _codec(args.codec, config)
    report = tail_experiment(
        codec,
        p=config.simulate_p,
        trials=config.simulate_trials,
        t_values=config.t_values,
        rng=RandomSource(config.seed),
        runner=_runner(config),
        grid_trials=args.grid_trials,
    )
    report.config['chunk_size'] = config.chunk_size
    text = report.render(config.output_format)
    if config.simulate_output:
        output = Path(config.simulate_output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding='utf-8')
        logger.info(f"Report written to {output}")
    else:
        sys.stdout.write(text)
    if not report.all_passed:
        failed = [row.t for row in report.rows if not row.passed]
        print(f"Bound check failed for t in {failed}", file=sys.stderr)
        return EXIT_ACCEPTANCE
    return EXIT_OK


def cmd_countcodewords(args, config: Config) -> int:
    try:
        generator = read_generator(args.matrix)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read generator matrix {args.matrix}: {e}") from e
    count = count_codewords(args.t, generator)
    print(count)
    if args.verify:
        expected = brute_force_count(args.t, generator)
        print(f"brute_force={expected}")
        if expected != count:
            print(f"Mismatch: {count} != {expected}", file=sys.stderr)
            return EXIT_ACCEPTANCE
    return EXIT_OK


def cmd_distance(args, config: Config) -> int:
    print(min_distance(_codec(args.codec, config)))
    return EXIT_OK


def cmd_failure(args, config: Config) -> int:
    codec = _codec(args.codec, config)
    exact = exact_failure_prob(codec, args.p)
    bound = distance_lower_bound(min_distance(codec), args.p)
    print(f"exact={exact!r}")
    print(f"lower_bound={bound!r}")
    return EXIT_OK


def cmd_hist(args, config: Config, logger) -> int:
    if args.hist_command == 'query':
        hist = load(args.sketch)
        for element in args.element:
            estimate = hist.estimate(element)
            print(repr(estimate) if len(args.element) == 1 else f"{element} {estimate!r}")
        return EXIT_OK

    try:
        counts = read_counts(args.input)
    except OSError as e:
        raise UsageError(f"cannot read counts {args.input}: {e}") from e
    codec = sketch_codec(config.hist_inner_matrix)
    q = config.hist_q if args.q is None else args.q
    params = HistParams.create(
        u=args.universe,
        n=args.n or max(1, sum(counts.values())),
        eps=args.eps,
        dprime=codec.d,
        q=q,
        width_factor=config.hist_width_factor,
        ell=config.hist_ell,
        debug=args.debug,
    )
    hist = build(counts, params, seed=config.seed, codec=codec)
    save(hist, args.output)
    logger.info(f"Sketch written to {args.output}")
    print(f"{hist.size_bits()} bits written to {args.output}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = parse_arguments(argv)
    logger = None

    try:
        config_path = args.config if Path(args.config).exists() else None
        config = Config(config_path)

        if args.seed is not None:
            config.config_data['seed'] = args.seed
        if getattr(args, 'command_seed', None) is not None:
            config.config_data['seed'] = args.command_seed
        if args.workers:
            config.config_data['workers'] = args.workers
        if args.log_level:
            config.config_data['log_level'] = args.log_level
        if args.command == 'simulate':
            section = config.config_data.setdefault('simulate', {})
            if args.p is not None:
                section['p'] = args.p
            if args.trials:
                section['trials'] = args.trials
            if args.t_values:
                section['t_values'] = args.t_values
            if args.format:
                section['output_format'] = args.format
            if args.output:
                section['output'] = args.output
        config._validate_config()

        logger = Logger.setup(config.log_file, config.log_level)
        logger.info(f"Running {args.command} with {config}")

        if args.command == 'encode':
            return cmd_encode(args, config)
        if args.command == 'decode':
            return cmd_decode(args, config)
        if args.command == 'simulate':
            return cmd_simulate(args, config, logger)
        if args.command == 'countcodewords':
            return cmd_countcodewords(args, config)
        if args.command == 'distance':
            return cmd_distance(args, config)
        if args.command == 'failure':
            return cmd_failure(args, config)
        return cmd_hist(args, config, logger)

    except KeyboardInterrupt:
        print("\n\nProcess interrupted by user", file=sys.stderr)
        return 130

    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except OSError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except (ValueError, RuntimeError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        if logger is not None:
            logger.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_DOMAIN


if __name__ == '__main__':
    sys.exit(main())
