"""Bundled problems and experiments."""
