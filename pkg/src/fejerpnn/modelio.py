"""Line-oriented model file helpers and the format dispatcher.

All model files are UTF-8 with LF endings. Floats are written as the
shortest decimal strings that round-trip to the exact binary value, so a
save/load/save cycle is byte-identical.
"""

from __future__ import annotations

import numpy as np

from .errors import FormatError, VersionError


def fmt_floats(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def parse_floats(text: str, expect: int | None = None) -> np.ndarray:
    try:
        values = np.array([float(tok) for tok in text.split()], dtype=float)
    except ValueError as exc:
        raise FormatError(f"bad numeric line: {exc}") from None
    if expect is not None and values.size != expect:
        raise FormatError(f"expected {expect} numbers, got {values.size}")
    return values


def to_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"bad {what}: {text!r}") from None


def to_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise FormatError(f"bad {what}: {text!r}") from None


class LineReader:
    """Sequential reader that turns premature EOF into FormatError."""

    def __init__(self, lines):
        self._it = iter(lines)
        self.lineno = 0

    def next(self, what: str = "line") -> str:
        try:
            line = next(self._it)
        except StopIteration:
            raise FormatError(f"truncated file: missing {what}") from None
        self.lineno += 1
        return line.rstrip("\n")


def check_version(header: str, family: str, version: str = "v1") -> None:
    parts = header.split()
    if len(parts) != 2 or parts[0] != family:
        raise FormatError(f"not a {family} model file (header {header!r})")
    if parts[1] != version:
        raise VersionError(
            f"unsupported {family} version {parts[1]!r}; this reader handles {version}"
        )


def read_kv_line(line: str, keys) -> dict:
    """Parse `k1 v1 k2 v2 ...` metadata lines with a fixed key order."""
    parts = line.split()
    if len(parts) != 2 * len(keys):
        raise FormatError(f"malformed metadata line: {line!r}")
    out = {}
    for i, key in enumerate(keys):
        if parts[2 * i] != key:
            raise FormatError(f"expected key {key!r} in line: {line!r}")
        out[key] = parts[2 * i + 1]
    return out


def parse_class_header(line: str):
    """Parse `class <label> count <int>`; the label may contain spaces."""
    if not line.startswith("class "):
        raise FormatError(f"expected a class header, got {line!r}")
    body, sep, count_txt = line[len("class ") :].rpartition(" count ")
    if not sep or not body:
        raise FormatError(f"malformed class header: {line!r}")
    try:
        count = int(count_txt)
    except ValueError:
        raise FormatError(f"bad instance count in {line!r}") from None
    return body, count


def write_text(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def read_lines(path) -> list[str]:
    with open(path, "r", encoding="utf-8", newline="\n") as fh:
        return fh.read().splitlines()


def sniff_family(path) -> str:
    lines = read_lines(path)
    if not lines or not lines[0].split():
        raise FormatError(f"{path}: empty or headerless model file")
    return lines[0].split()[0]


def load_model(path):
    """Load any supported model file, dispatching on its header family."""
    from .baselines import GaussianPnn, KnnClassifier, NearestCentroid, ReducedPnn
    from .classifier import FejerPnn

    loaders = {
        "FPNN": FejerPnn.load,
        "GPNN": GaussianPnn.load,
        "RPNN": ReducedPnn.load,
        "KNN": KnnClassifier.load,
        "NCM": NearestCentroid.load,
    }
    family = sniff_family(path)
    try:
        loader = loaders[family]
    except KeyError:
        raise FormatError(f"{path}: unknown model family {family!r}") from None
    return loader(path)


def save_pca(transform, path) -> None:
    """Write a PCA transform: mean line, then one line per projection row."""
    lines = [
        "PCA v1",
        f"dim {transform.input_dim} components {transform.target_dim}",
        fmt_floats(transform.mean),
    ]
    lines.extend(fmt_floats(row) for row in transform.projection)
    write_text(path, lines)


def load_pca(path):
    from .features import PcaTransform

    reader = LineReader(read_lines(path))
    check_version(reader.next("header"), "PCA")
    meta = read_kv_line(reader.next("metadata"), ("dim", "components"))
    dim, n_comp = int(meta["dim"]), int(meta["components"])
    mean = parse_floats(reader.next("mean line"), expect=dim)
    rows = [parse_floats(reader.next("projection row"), expect=dim) for _ in range(n_comp)]
    return PcaTransform(mean=mean, projection=np.vstack(rows))
