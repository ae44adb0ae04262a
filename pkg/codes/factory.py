"""
Codec factory for building codecs from descriptors.

Inline descriptors read `kind:key=value,...`; a nested code is given as
`inner=(kind:key=value,...)` or just `inner=kind`. Descriptor files hold the
same structure as YAML mappings.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from core.bitcore import BitString, RandomSource
from linear.codec import LinearCodec
from linear.expander import ExpanderConfig, expander_build
from linear.lgray import LinearGrayCodec, RepeatCodec
from linear.matrix import GeneratorMatrix, read_generator
from .base import Codec, TieBreakPolicy, DETERMINISTIC
from .ccd import ConstantDistanceCodec
from .complement import ComplementCodec
from .gray import GrayCodec
from .repetition import BlockRepetitionCodec, PairTripleCodec, RepetitionCodec
from .unary import UnaryCodec


class DescriptorError(ValueError):
    """A codec descriptor could not be parsed or names an unknown codec."""


# bit patterns and paths stay text
RAW_KEYS = {'rows', 'matrix', 'decoder', 'ties'}


def _split_top_level(text: str) -> List[str]:
    items = []
    depth = 0
    current = []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced ')' in descriptor {text!r}")
        if ch == ',' and depth == 0:
            items.append(''.join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise DescriptorError(f"unbalanced '(' in descriptor {text!r}")
    items.append(''.join(current))
    return [item.strip() for item in items if item.strip()]


def _coerce(value: str) -> Any:
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def parse_descriptor(text: str) -> Dict[str, Any]:
    """
    Parse an inline codec descriptor into a nested mapping.

    Args:
        text: Descriptor such as "gray:inner=(blockrep:bits=2,reps=3)"

    Returns:
        Mapping with a 'kind' key and one key per parameter

    Raises:
        DescriptorError: On malformed text
    """
    text = text.strip()
    while text.startswith('(') and text.endswith(')'):
        text = text[1:-1].strip()
    kind, _, rest = text.partition(':')
    kind = kind.strip()
    if not kind or not kind.replace('_', '').isalnum():
        raise DescriptorError(f"malformed codec kind in descriptor {text!r}")
    descriptor: Dict[str, Any] = {'kind': kind}
    for item in _split_top_level(rest):
        key, sep, value = item.partition('=')
        key = key.strip()
        if not sep or not key:
            raise DescriptorError(f"expected key=value, got {item!r} in descriptor {text!r}")
        value = value.strip()
        if key == 'inner':
            descriptor[key] = parse_descriptor(value)
        else:
            descriptor[key] = value if key in RAW_KEYS else _coerce(value)
    return descriptor


def blockrep_as_linear(codec: BlockRepetitionCodec) -> LinearCodec:
    """The same block repetition code as a LinearCodec (row 1 = least significant bit)."""
    block = (1 << codec.reps) - 1
    rows = [BitString(codec.d, block << (k * codec.reps)) for k in range(codec.bits)]
    return LinearCodec(GeneratorMatrix.from_strings([str(row) for row in rows]),
                       distance=codec.reps)


class CodecFactory:
    """Factory for creating codecs from descriptors."""

    CODEC_MAP = {
        'unary': '_build_unary',
        'repetition': '_build_repetition',
        'blockrep': '_build_blockrep',
        'pairtriple': '_build_pairtriple',
        'complement': '_build_complement',
        'ccd': '_build_ccd',
        'gray': '_build_gray',
        'linear': '_build_linear',
        'repeat3': '_build_repeat3',
        'lgray': '_build_lgray',
        'expander': '_build_expander',
    }

    def __init__(self, rng: Optional[RandomSource] = None, base_dir: Optional[Path] = None,
                 expander_defaults: Optional[Dict[str, Any]] = None):
        """
        Args:
            rng: Randomness for `ties=random` descriptors
            base_dir: Directory that relative matrix paths resolve against
            expander_defaults: Expander parameters used where a descriptor omits them
        """
        self.rng = rng
        self.base_dir = Path(base_dir) if base_dir else Path('.')
        self.expander_defaults = dict(expander_defaults or {})

    @classmethod
    def create(cls, spec: str, rng: Optional[RandomSource] = None,
               expander_defaults: Optional[Dict[str, Any]] = None) -> Codec:
        """
        Build a codec from an inline descriptor or a YAML descriptor file.

        Args:
            spec: Inline descriptor, or path to a .yaml/.yml file
            rng: Randomness for random tie-breaking
            expander_defaults: Configured expander parameters

        Returns:
            Codec instance

        Raises:
            DescriptorError: If the descriptor is malformed or unknown
            ValueError: If the parameters are outside a codec's domain
        """
        path = Path(spec)
        if path.suffix.lower() in ('.yaml', '.yml'):
            if not path.exists():
                raise DescriptorError(f"descriptor file not found: {spec}")
            with open(path, 'r') as f:
                descriptor = yaml.safe_load(f)
            if not isinstance(descriptor, dict):
                raise DescriptorError(f"descriptor file {spec} must hold a mapping")
            return cls(rng, path.parent, expander_defaults).build(descriptor)
        return cls(rng, expander_defaults=expander_defaults).build(parse_descriptor(spec))

    @classmethod
    def is_supported(cls, kind: str) -> bool:
        return kind in cls.CODEC_MAP

    @classmethod
    def get_supported_kinds(cls) -> list[str]:
        return list(cls.CODEC_MAP.keys())

    def build(self, descriptor: Dict[str, Any]) -> Codec:
        """Build a codec from a parsed descriptor mapping."""
        kind = descriptor.get('kind')
        if not self.is_supported(kind):
            raise DescriptorError(
                f"unknown codec kind {kind!r}; supported: {', '.join(self.get_supported_kinds())}"
            )
        return getattr(self, self.CODEC_MAP[kind])(descriptor)

    def _ties(self, descriptor: Dict[str, Any]) -> TieBreakPolicy:
        mode = descriptor.get('ties', 'smallest')
        if mode == 'smallest':
            return DETERMINISTIC
        if mode == 'random':
            if self.rng is None:
                raise DescriptorError("ties=random needs a seeded random source")
            return TieBreakPolicy('random', self.rng.split('ties'))
        raise DescriptorError(f"unknown tie-break mode {mode!r}")

    def _require(self, descriptor: Dict[str, Any], key: str) -> Any:
        if key not in descriptor:
            raise DescriptorError(f"codec {descriptor['kind']!r} needs parameter {key!r}")
        return descriptor[key]

    def _inner(self, descriptor: Dict[str, Any]) -> Codec:
        inner = self._require(descriptor, 'inner')
        if isinstance(inner, str):
            inner = parse_descriptor(inner)
        return self.build(inner)

    def _linear_inner(self, descriptor: Dict[str, Any]) -> LinearCodec:
        inner = self._inner(descriptor)
        if isinstance(inner, LinearCodec):
            return inner
        if isinstance(inner, BlockRepetitionCodec):
            return blockrep_as_linear(inner)
        raise DescriptorError(f"codec {descriptor['kind']!r} needs a linear inner code, got {inner!r}")

    def _build_unary(self, descriptor):
        return UnaryCodec(int(self._require(descriptor, 'm')), self._ties(descriptor))

    def _build_repetition(self, descriptor):
        return RepetitionCodec(int(self._require(descriptor, 'd')), self._ties(descriptor))

    def _build_blockrep(self, descriptor):
        return BlockRepetitionCodec(int(self._require(descriptor, 'bits')),
                                    int(self._require(descriptor, 'reps')),
                                    self._ties(descriptor))

    def _build_pairtriple(self, descriptor):
        return PairTripleCodec(self._ties(descriptor))

    def _build_complement(self, descriptor):
        return ComplementCodec(self._inner(descriptor), self._ties(descriptor))

    def _build_ccd(self, descriptor):
        return ConstantDistanceCodec(self._inner(descriptor), self._ties(descriptor))

    def _build_gray(self, descriptor):
        return GrayCodec(self._inner(descriptor), self._ties(descriptor))

    def _build_linear(self, descriptor):
        if 'rows' in descriptor:
            rows = descriptor['rows']
            if isinstance(rows, (int, str)):
                rows = str(rows).split('/')
            generator = GeneratorMatrix.from_strings([str(row) for row in rows])
        elif 'matrix' in descriptor:
            path = Path(str(descriptor['matrix']))
            generator = read_generator(str(path if path.is_absolute() else self.base_dir / path))
        else:
            raise DescriptorError("codec 'linear' needs 'rows' or 'matrix'")
        distance = descriptor.get('distance')
        return LinearCodec(generator, decoder=descriptor.get('decoder', 'ml'),
                           distance=int(distance) if distance is not None else None)

    def _build_repeat3(self, descriptor):
        return RepeatCodec(self._inner(descriptor))

    def _build_lgray(self, descriptor):
        return LinearGrayCodec(self._linear_inner(descriptor), self._ties(descriptor))

    def _build_expander(self, descriptor):
        fields = {key: value for key, value in descriptor.items() if key != 'kind'}
        known = set(ExpanderConfig.__dataclass_fields__)
        unknown = set(fields) - known
        if unknown:
            raise DescriptorError(f"unknown expander parameters: {', '.join(sorted(unknown))}")
        settings = {key: value for key, value in self.expander_defaults.items() if key in known}
        settings.update(fields)
        return expander_build(ExpanderConfig(**settings))
