import json
import logging
import math
import os

import numpy as np

logger = logging.getLogger(__name__)


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _float17(value: float) -> str:
    """17 significant digits, keeping a decimal point so the value reads back as a float."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    text = f"{value:.17g}"
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


class _Float17Encoder(json.JSONEncoder):
    """JSONEncoder that writes floats like the CSV writer does (%.17g)."""

    def iterencode(self, o, _one_shot=False):
        markers = {} if self.check_circular else None
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        # the pure-Python encoder is the one that accepts a float formatter
        _iterencode = json.encoder._make_iterencode(
            markers, self.default, encoder, self.indent, _float17,
            self.key_separator, self.item_separator, self.sort_keys,
            self.skipkeys, _one_shot,
        )
        return _iterencode(o, 0)


def _prepare(path):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    return path


class SampleRepository:

    @staticmethod
    def resolve(output_dir, scenario, path):
        """Relative paths land under <output_dir>/<scenario>/."""
        if os.path.isabs(path):
            return path
        return os.path.join(output_dir, scenario, path)

    @staticmethod
    def write_csv(df, path):
        """Write a sample table with full float precision"""
        df.to_csv(_prepare(path), index=False, float_format="%.17g", lineterminator="\n", na_rep="NaN")
        logger.info("wrote %d rows to %s", len(df), path)
        return path

    @staticmethod
    def write_obj(text, path):
        with open(_prepare(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        logger.info("wrote mesh to %s", path)
        return path

    @staticmethod
    def write_json(payload, path):
        """Write a report payload with sorted keys"""
        with open(_prepare(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(SampleRepository.dumps(payload))
            fh.write("\n")
        logger.info("wrote report to %s", path)
        return path

    @staticmethod
    def dumps(payload):
        return json.dumps(payload, sort_keys=True, indent=2, default=_json_default, cls=_Float17Encoder)
