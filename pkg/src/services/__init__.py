"""Experiment orchestration used by the command line."""
