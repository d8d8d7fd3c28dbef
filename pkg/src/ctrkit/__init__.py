"""ctrkit: capture, track, and triage mal-info narratives in social media corpora."""

__version__ = "0.1.0"
