"""Tests for weylsic."""
