"""Friendly JSON serializer & deserializer for synthesis reports."""
import collections.abc
import json
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, Iterator, Optional, Tuple


def _report_default(obj: Any) -> Any:
    """Encode the non-JSON values a report may carry: dataclasses and sets."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return asdict(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=str)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def _children(obj: Any) -> Iterator[Tuple[str, Any]]:
    if isinstance(obj, collections.abc.Mapping):
        yield from ((str(key), value) for key, value in obj.items())
    elif isinstance(obj, collections.abc.Sequence) and not isinstance(obj, (str, bytes, bytearray)):
        yield from ((str(index), value) for index, value in enumerate(obj))


class FriendlyJsonSerde:
    """JSON serializer & deserializer that names the fields it fails on.

    When a value of a report cannot be encoded, the error gives its dotted path
    (``stats.seconds``, ``preferred.0.program``) instead of the bare ``TypeError`` of :mod:`json`.
    """

    indent: Optional[int] = 2

    def unencodable_paths(self, obj: Any, prefix: str = "") -> Iterator[str]:
        """Dotted paths of the leaves that cannot be encoded.

        >>> list(FriendlyJsonSerde().unencodable_paths({"stats": {"n": 1, "bad": object()}}))
        ['stats.bad']
        """
        children = list(_children(obj))
        if not children:
            try:
                json.dumps(obj, default=_report_default)
            except (TypeError, ValueError):
                yield prefix or "<root>"
            return
        for name, value in children:
            yield from self.unencodable_paths(value, f"{prefix}.{name}" if prefix else name)

    def json_encode(self, obj: Any) -> str:
        """Serialize a report to JSON text with friendly error messages."""
        try:
            return json.dumps(obj, indent=self.indent, default=_report_default)
        except (TypeError, ValueError) as exc:
            paths = ", ".join(self.unencodable_paths(obj))
            raise TypeError(f"Could not encode report to JSON, unencodable values at: {paths}") from exc

    def json_decode(self, json_str: str) -> Dict[str, Any]:  # pylint: disable=no-self-use
        """Read a report back, keeping :class:`json.JSONDecodeError` as the error type."""
        try:
            return json.loads(json_str)
        except json.decoder.JSONDecodeError as exc:
            err_msg = f"Could not decode report {json_str[:40]!r} because of {exc}."
            raise json.decoder.JSONDecodeError(err_msg, exc.doc, exc.pos) from exc
