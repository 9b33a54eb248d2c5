def process(lhs, beta):
    return lhs + beta
