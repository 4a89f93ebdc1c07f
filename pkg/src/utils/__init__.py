"""Utilities: tokenising, text wrapping."""
