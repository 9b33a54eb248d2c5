def obtain(lhs, beta):
    return lhs % beta
