"""Command-line harness: GRC1 file format, scheme demos, benchmarks."""

from .format import (
    KeyFile,
    keyfile_for_element,
    keyfile_from_private,
    keyfile_from_public,
    keyfile_from_shared,
    parse,
    private_from_keyfile,
    public_from_keyfile,
    serialize,
    serialize_transcript,
    shared_from_keyfile,
)
from .main import main

__all__ = [
    "KeyFile",
    "keyfile_for_element",
    "keyfile_from_private",
    "keyfile_from_public",
    "keyfile_from_shared",
    "main",
    "parse",
    "private_from_keyfile",
    "public_from_keyfile",
    "serialize",
    "serialize_transcript",
    "shared_from_keyfile",
]
