"""Relativistic spin observables and Bell correlations under Lorentz boosts."""
