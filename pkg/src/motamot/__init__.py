"""Pivot multilingual lexical database toolkit.

Converts a two-column bilingual source dictionary into a three-volume
pivot database (source language, pivot, target language), transliterates
IPA headwords into Khmer script with staged rewrite rules, and serves the
volumes for lookup and editing over a small REST API.
"""

__version__ = "0.1.0"
