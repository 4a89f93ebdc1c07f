"""Interlanguage transfer-error parser."""
