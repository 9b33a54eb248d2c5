def produce_fn(lhs, second_num):
    return lhs * second_num
