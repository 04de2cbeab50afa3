"""Sketch language: syntax tree, parsers, validation and printing."""
