def obtain(p, beta):
    return p - beta
