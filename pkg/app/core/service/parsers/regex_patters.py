NATURAL_PATTERN = r'(0|[1-9][0-9]*)'
NATURAL_LIST_PATTERN = rf'{NATURAL_PATTERN}(,{NATURAL_PATTERN})*'
INTEGER_PATTERN = rf'-?{NATURAL_PATTERN}'

PRIME_SET_PATTERN = rf'(\{{{NATURAL_LIST_PATTERN}\}}|all\\\{{({NATURAL_LIST_PATTERN})?\}}|all)'
EXPONENT_SET_PATTERN = PRIME_SET_PATTERN
MULT_PATTERN = rf'({NATURAL_PATTERN}|w|aleph\({NATURAL_PATTERN}\))'

TERM_PATTERN = rf'(?P<atom>.+?)(\^(?P<mult>{MULT_PATTERN}))?'
TRIVIAL_PATTERN = r'0'
CYCLIC_PATTERN = rf'Z/(?P<n>{NATURAL_PATTERN})'
PRUFER_PATTERN = rf'Prufer\((?P<p>{NATURAL_PATTERN})\)'
RATIONALS_PATTERN = r'Q'
PADIC_PATTERN = rf'Zhat\((?P<p>{NATURAL_PATTERN})\)'
PRIME_FAMILY_PATTERN = rf'sumP\((?P<primes>{PRIME_SET_PATTERN});Z/p\^(?P<k>{NATURAL_PATTERN})\)'
PADIC_FAMILY_PATTERN = rf'sumP\((?P<primes>{PRIME_SET_PATTERN});Zhat\)'
EXPONENT_FAMILY_PATTERN = rf'sumK\((?P<p>{NATURAL_PATTERN});(?P<exponents>{EXPONENT_SET_PATTERN})\)'

INTEGER_LIST_PATTERN = rf'\[({INTEGER_PATTERN}(,{INTEGER_PATTERN})*)?\]'
INTEGER_MATRIX_PATTERN = rf'\[{INTEGER_LIST_PATTERN}(,{INTEGER_LIST_PATTERN})*\]'
INTEGER_MATRIX_LIST_PATTERN = rf'\[({INTEGER_LIST_PATTERN}(,{INTEGER_LIST_PATTERN})*)?\]'
