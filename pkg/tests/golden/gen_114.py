def derive(alpha, second_num):
    if alpha > second_num:
        return alpha
    return second_num
