def measure(alpha, rhs):
    return list(zip(alpha, rhs))
