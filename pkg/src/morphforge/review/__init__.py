"""Human review stage: manifest-backed store and HTTP service."""

from .service import create_app, serve
from .store import ReviewDecision, ReviewStore, replay_audit

__all__ = ["ReviewDecision", "ReviewStore", "create_app", "replay_audit", "serve"]
