"""Flat binary array files: fixed header, little-endian float64 payload, SHA-256 checksum.

Layout::

    magic    4 bytes   b"GDUF"
    version  uint16
    dtype    uint8     1 = float64
    rank     uint8
    extents  rank x uint64
    checksum 32 bytes  SHA-256 of the payload
    payload  prod(extents) x float64, little-endian, C order
"""

import hashlib
import logging
import struct

import numpy as np
from numpy.typing import NDArray

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ChecksumError, DatasetFormatError, FormatVersionError, TruncatedFileError

logger = logging.getLogger(__name__)

DTYPE_FLOAT64 = 1
_PREFIX = struct.Struct("<4sHBB")
_CHECKSUM_SIZE = 32


def encode_array(array: NDArray[np.float64]) -> bytes:
    """Serialize an array into the binary file format."""
    data = np.ascontiguousarray(array, dtype="<f8")
    payload = data.tobytes()
    header = _PREFIX.pack(CONSTANTS.ARRAY_MAGIC, CONSTANTS.ARRAY_VERSION, DTYPE_FLOAT64, data.ndim)
    extents = struct.pack(f"<{data.ndim}Q", *data.shape)
    return header + extents + hashlib.sha256(payload).digest() + payload


def decode_array(blob: bytes, source: str = "<memory>") -> NDArray[np.float64]:
    """Parse bytes produced by :func:`encode_array`.

    Raises:
        TruncatedFileError: If the header or payload is incomplete.
        FormatVersionError: If the file was written by another format version.
        ChecksumError: If the payload does not match its checksum.
        DatasetFormatError: For a bad magic number, dtype code or trailing bytes.
    """
    if len(blob) < _PREFIX.size:
        raise TruncatedFileError(f"{source}: file too short for a header ({len(blob)} bytes)")
    magic, version, dtype_code, rank = _PREFIX.unpack_from(blob, 0)
    if magic != CONSTANTS.ARRAY_MAGIC:
        raise DatasetFormatError(f"{source}: not a gan-duf array file (magic {magic!r})")
    if version != CONSTANTS.ARRAY_VERSION:
        raise FormatVersionError(source, version, CONSTANTS.ARRAY_VERSION)
    if dtype_code != DTYPE_FLOAT64:
        raise DatasetFormatError(f"{source}: unsupported dtype code {dtype_code}")

    offset = _PREFIX.size
    header_end = offset + 8 * rank + _CHECKSUM_SIZE
    if len(blob) < header_end:
        raise TruncatedFileError(f"{source}: header ends after {len(blob)} bytes")
    shape = struct.unpack_from(f"<{rank}Q", blob, offset)
    checksum = blob[offset + 8 * rank : header_end]

    expected = 8 * int(np.prod(shape, dtype=np.int64))
    payload = blob[header_end:]
    if len(payload) < expected:
        raise TruncatedFileError(
            f"{source}: payload has {len(payload)} bytes, header announces {expected}"
        )
    if len(payload) > expected:
        raise DatasetFormatError(f"{source}: {len(payload) - expected} trailing bytes")
    if hashlib.sha256(payload).digest() != checksum:
        raise ChecksumError(f"{source}: payload checksum mismatch")

    return np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(shape)


def write_array(path: str, array: NDArray[np.float64]) -> None:
    with open(path, "wb") as f:
        f.write(encode_array(array))
    logger.debug(f"Wrote array {tuple(np.shape(array))} to {path}")


def read_array(path: str) -> NDArray[np.float64]:
    """Read an array file written by :func:`write_array`."""
    with open(path, "rb") as f:
        blob = f.read()
    return decode_array(blob, path)
