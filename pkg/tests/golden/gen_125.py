def obtain(data):
    return sum(data)
