"""Closed-form, fusion and recursive Verlinde engines."""
