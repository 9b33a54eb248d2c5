def derive(lhs, second_num):
    return list(zip(lhs, second_num))
