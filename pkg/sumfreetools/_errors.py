'''
Exception hierarchy and warning category shared by all sumfreetools modules.

Every exception carries the process exit code the command line maps it to.
'''


class SumFreeToolsError(Exception):
    '''Base class for all errors raised by sumfreetools.'''
    exit_code = 1


class InputError(SumFreeToolsError, ValueError):
    '''Malformed or out-of-domain input.'''
    exit_code = 4


class NotTypeIError(InputError):
    '''The group has no prime divisor q with q = 2 (mod 3).'''


class DecodeError(InputError):
    '''A certificate is malformed or inconsistent with the replayed algorithm.'''


class BudgetExhausted(SumFreeToolsError):
    '''An exact search ran out of its node budget.

    The partial count is attached so that a caller can never mistake it for the
    exact value.
    '''
    exit_code = 3

    def __init__(self, nodes, count, budget):
        self.nodes = nodes
        self.count = count
        self.budget = budget
        super().__init__(f'node budget {budget} exhausted after {nodes} nodes '
                         f'(partial count {count}, not exact)')


class ClaimViolation(SumFreeToolsError, AssertionError):
    '''A combinatorial law checked at run time does not hold.'''
    exit_code = 2


class FindingWarning(UserWarning):
    '''A reported-only observation, such as a trend violation.'''


def exit_code_for(exc):
    '''Return the command line exit code for an exception instance.'''
    if isinstance(exc, SumFreeToolsError):
        return exc.exit_code
    if isinstance(exc, AssertionError):
        return ClaimViolation.exit_code
    if isinstance(exc, OSError):
        return InputError.exit_code
    return 1
