def mask(x):
    return x & 0xff
