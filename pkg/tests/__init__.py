"""Tests for bosoncast."""
