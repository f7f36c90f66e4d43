"""Pydantic schemas for configs, reports and manifests."""
