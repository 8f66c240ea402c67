"""Evaluation of Schur polynomials and character identities at roots of unity."""
