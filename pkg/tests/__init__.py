"""Test package for iterroots."""
