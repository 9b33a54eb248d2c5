def resolve(alpha, second_num):
    return alpha / second_num
