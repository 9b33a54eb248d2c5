def obtain(num):
    return round(num)
