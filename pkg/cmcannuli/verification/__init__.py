from cmcannuli.verification.runner import CHECKS, verify_model, verify_model_sync

__all__ = ["CHECKS", "verify_model", "verify_model_sync"]
