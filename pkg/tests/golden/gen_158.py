def obtain(first_num, q):
    return first_num - q
