"""Protocol runners: transport, key agreement, public key, authentication."""

from .analysis import AmbiguityReport, ambiguity_report, view_violations
from .auth import (
    AuthSessionResult,
    MatrixIdentity,
    OriginAuthResult,
    PreventionBlock,
    PreventionResult,
    authenticate_session_commuting,
    authenticate_session_noncommuting,
    prevention_run,
    prove_origin_commuting,
    prove_origin_noncommuting,
    publish_matrix_identity,
)
from .base import Channel, Message, Transcript, require_large_kernel, spawn_rngs
from .keyexchange import (
    CodedKeyExchangeResult,
    KeyExchangeResult,
    MultiKeyResult,
    SharedKey,
    exchange_keys,
    exchange_keys_coded,
    exchange_keys_commuting,
    exchange_keys_multivector,
)
from .multivector import SCHEMES, multivector_run, sample_block_payload
from .publickey import (
    Ciphertext,
    MultiPrivateKey,
    MultiPublicKey,
    PartialKey,
    PartialPrivatizeResult,
    PrivateKey,
    PrivatizeResult,
    PublicKey,
    decrypt,
    decrypt_multi,
    encrypt,
    encrypt_multi,
    generate_keypair,
    generate_multi_keypair,
    privatize,
    privatize_check,
    privatize_partial,
    publish_partial_key,
)
from .threepass import (
    CodedResult,
    ProtectedResult,
    ThreePassResult,
    coded_three_pass,
    three_pass_commuting,
    three_pass_general,
    three_pass_protected,
)

__all__ = [
    "AmbiguityReport",
    "AuthSessionResult",
    "Channel",
    "Ciphertext",
    "CodedKeyExchangeResult",
    "CodedResult",
    "KeyExchangeResult",
    "MatrixIdentity",
    "Message",
    "MultiKeyResult",
    "MultiPrivateKey",
    "MultiPublicKey",
    "OriginAuthResult",
    "PartialKey",
    "PartialPrivatizeResult",
    "PreventionBlock",
    "PreventionResult",
    "PrivateKey",
    "PrivatizeResult",
    "ProtectedResult",
    "PublicKey",
    "SCHEMES",
    "SharedKey",
    "ThreePassResult",
    "Transcript",
    "ambiguity_report",
    "authenticate_session_commuting",
    "authenticate_session_noncommuting",
    "coded_three_pass",
    "decrypt",
    "decrypt_multi",
    "encrypt",
    "encrypt_multi",
    "exchange_keys",
    "exchange_keys_coded",
    "exchange_keys_commuting",
    "exchange_keys_multivector",
    "generate_keypair",
    "generate_multi_keypair",
    "multivector_run",
    "prevention_run",
    "privatize",
    "privatize_check",
    "privatize_partial",
    "prove_origin_commuting",
    "prove_origin_noncommuting",
    "publish_matrix_identity",
    "publish_partial_key",
    "require_large_kernel",
    "sample_block_payload",
    "spawn_rngs",
    "three_pass_commuting",
    "three_pass_general",
    "three_pass_protected",
    "view_violations",
]
