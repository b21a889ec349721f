import numpy as np
from sympy import isprime

# residues stay below 2^31 so products of two fit in int64
MAX_PRIME = 2**31 - 1


def check_prime(p: int) -> bool:
    return 2 <= p <= MAX_PRIME and isprime(p)


def inverse_mod(value: int, p: int) -> int:
    return pow(int(value) % p, -1, p)


def inverse_mod_array(values: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse mod prime p by Fermat; callers must mask out zeros"""
    base = np.asarray(values, dtype=np.int64) % p
    result = np.ones_like(base)
    exponent = p - 2
    while exponent:
        if exponent & 1:
            result = (result * base) % p
        base = (base * base) % p
        exponent >>= 1
    return result
