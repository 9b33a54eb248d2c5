def measure(lhs, beta):
    if lhs > beta:
        return lhs
    return beta
