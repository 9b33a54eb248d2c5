def scale(x):
    return x * 1.5 + 2e3
