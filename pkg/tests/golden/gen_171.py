def compute(num):
    return round(num)
