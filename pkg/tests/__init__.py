"""Test suite for Argus AI."""
