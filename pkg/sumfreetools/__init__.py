'''Top-level package for sumfreetools.


How to use ``sumfreetools`` in a project
----------------------------------------

    Alternative 1:
        >>> import sumfreetools
        >>> sumfreetools.enumerate_SF0(sumfreetools.parse_group('Z5'))

    Alternative 2:
        >>> from sumfreetools.group import parse_group
        >>> from sumfreetools.counting import count_sum_free
        >>> count_sum_free(parse_group('Z10'), 5)

'''

__author__ = '''Tim Skov Jacobsen'''
__email__ = 'timskovjacobsen@gmail.com'
__version__ = '0.2.0'

# Import the public namespace of every module
from ._errors import (SumFreeToolsError, InputError, NotTypeIError,  # noqa
                      DecodeError, BudgetExhausted, ClaimViolation, FindingWarning)
from .group import *                # noqa
from .hypergraph import *           # noqa
from .extremal import *             # noqa
from .encoding import *             # noqa
from .spectral import *             # noqa
from .counting import *             # noqa
