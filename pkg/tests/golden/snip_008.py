def clamp(x):
    if x >= 10:
        x = 10
    return x
