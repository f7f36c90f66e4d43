"""Vectors, point sets, decreasing arrangement, blocks and sign patterns."""
