"""
On-disk cache of completed coset enumerations.

Keys are a sha256 of the presentation text, the subgroup generators and
the strategy. Only completed outcomes are stored. A stored outcome is
reused when the work it recorded fits inside the current bounds; any
other lookup enumerates again.
"""

import hashlib
import logging
from typing import Optional, Sequence

from django.conf import settings
from django.core.cache import caches
from django.core.cache.backends.filebased import FileBasedCache

from fpgroup.coset_enumeration import EnumerationBounds, EnumerationOutcome, coset_enumerate
from fpgroup.presentation import Presentation, format_presentation, format_word
from fpgroup.words import Word

logger = logging.getLogger(__name__)


def open_cache(cache_dir: Optional[str] = None):
    """The configured certificate cache, or a file cache rooted at ``cache_dir``."""
    if cache_dir:
        return FileBasedCache(cache_dir, {'TIMEOUT': None})
    return caches['certificates']


def certificate_key(p: Presentation, subgroup_gens: Sequence[Word], strategy: str) -> str:
    subgroup = ','.join(format_word(p.generator_names, w) for w in subgroup_gens)
    text = f"{format_presentation(p)}|{subgroup}|{strategy}"
    return f"coset:{hashlib.sha256(text.encode('utf-8')).hexdigest()}"


def fits(outcome: EnumerationOutcome, bounds: EnumerationBounds) -> bool:
    return (outcome.completed
            and outcome.cosets_defined <= bounds.max_definitions
            and outcome.max_live_cosets <= bounds.max_cosets)


class CachingEnumerator:
    """Drop-in for coset_enumerate."""

    def __init__(self, cache=None):
        self.cache = cache if cache is not None else open_cache()
        self.hits = 0
        self.misses = 0

    def __call__(self, p: Presentation, subgroup_gens: Sequence[Word] = (),
                 bounds: Optional[EnumerationBounds] = None, strategy: Optional[str] = None,
                 lookahead: Optional[bool] = None) -> EnumerationOutcome:
        bounds = bounds or EnumerationBounds()
        strategy = strategy or settings.FOURCALC_ENUMERATION_STRATEGY
        key = certificate_key(p, subgroup_gens, strategy)
        try:
            stored = self.cache.get(key)
        except Exception as e:
            logger.warning(f"Certificate cache read failed for {key}: {e}")
            stored = None
        if stored is not None and fits(stored, bounds):
            self.hits += 1
            logger.debug(f"Certificate cache hit {key}")
            return stored

        self.misses += 1
        outcome = coset_enumerate(p, subgroup_gens, bounds=bounds, strategy=strategy, lookahead=lookahead)
        if outcome.completed:
            try:
                self.cache.set(key, outcome, None)
            except Exception as e:
                logger.warning(f"Certificate cache write failed for {key}: {e}")
        return outcome
