"""Rewriting of sketches into meta-programs."""
