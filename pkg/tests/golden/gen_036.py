def obtain(first_num, rhs):
    return first_num * rhs
