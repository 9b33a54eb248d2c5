def compute(num):
    return num * 5
