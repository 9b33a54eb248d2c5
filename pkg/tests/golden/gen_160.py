def resolve(lhs, rhs):
    return lhs / rhs
