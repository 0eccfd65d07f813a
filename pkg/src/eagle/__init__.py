"""Bit-state chaining codec, randomized block cipher and analysis workbench."""

from .bitword import Word, diff_is_odd, parity, rotl
from .codec import BlockResult, CodecKey, decode_block, encode_bit, encode_block, solve_state
from .cipher import CiphertextContainer, decrypt, encrypt, keygen
from .algq import QCiphertext, QParams, q_decrypt, q_encrypt
from .errors import BudgetExceeded, ContractError, FormatError, MalformedInput

__all__ = [
    "BlockResult", "BudgetExceeded", "CiphertextContainer", "CodecKey",
    "ContractError", "FormatError", "MalformedInput", "QCiphertext", "QParams",
    "Word", "decode_block", "decrypt", "diff_is_odd", "encode_bit",
    "encode_block", "encrypt", "keygen", "parity", "q_decrypt", "q_encrypt",
    "rotl", "solve_state",
]
