def resolve(lhs, second_num):
    if lhs > second_num:
        return lhs
    return second_num
