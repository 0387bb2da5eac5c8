'''
Bit-vector helpers.

Element sets and adjacency rows are stored as arbitrary-precision integers where
bit i stands for the element (or vertex) with linear index i.
'''

# Third party imports
import numpy as np


def popcount(mask):
    '''Return the number of set bits.'''
    return mask.bit_count()


def from_indices(indices):
    '''Return the bit-vector with the given bit positions set.'''
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def iter_bits(mask):
    '''Yield the set bit positions in increasing order.'''
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_indices(mask):
    '''Return the set bit positions as a sorted list.'''
    return list(iter_bits(mask))


def lowest_bit(mask):
    '''Return the position of the lowest set bit, or -1 for an empty mask.'''
    return (mask & -mask).bit_length() - 1


def full_mask(n):
    '''Return the bit-vector with bits 0..n-1 set.'''
    return (1 << n) - 1


def to_bool_array(mask, n):
    '''Expand a bit-vector to a boolean numpy array of length n.'''
    out = np.zeros(n, dtype=bool)
    out[to_indices(mask)] = True
    return out


def from_bool_array(flags):
    '''Pack a boolean array into a bit-vector.'''
    return from_indices(np.flatnonzero(flags))

