"""Embedding operator families and the sign-randomized composition."""
