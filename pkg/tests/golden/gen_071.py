def compute(num):
    return math.ceil(num)
