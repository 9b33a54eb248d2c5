def gather(value):
    return value % 2 == 0
