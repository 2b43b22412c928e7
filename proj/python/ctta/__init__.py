# Copyright 2026 The ctta Authors.
# SPDX-License-Identifier: Apache-2.0
"""Structured prompts, phoneme lookup, guidance math and SED scoring."""

import os as _os

from ._ctta import (  # noqa: F401
    ParseError,
    canonicalize,
    cfg_combine,
    clip_level_macro_f1,
    cosine_alpha_bar,
    event_based_f1,
    g2p,
    load_lexicon,
    parse,
    serialize,
    validate,
)

_packaged = _os.path.join(_os.path.dirname(__file__), "data", "lexicon", "cmudict.dict")


def default_lexicon_path():
    """The dictionary installed with the package, else the source tree's copy."""
    if _os.path.exists(_packaged):
        return _packaged
    from ._ctta import _source_lexicon_path

    return _source_lexicon_path()
