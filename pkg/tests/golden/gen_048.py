def compute(value):
    return round(value)
