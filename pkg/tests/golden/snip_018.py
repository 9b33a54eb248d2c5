def order(xs):
    return sorted(xs, key=len)
