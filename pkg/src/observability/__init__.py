"""Structured logging and reduction tracking."""
