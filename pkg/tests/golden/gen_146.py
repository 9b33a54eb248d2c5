def compute(num):
    return num > 0
