"""Experiment runners, benchmarks, and the reference blueprints."""
