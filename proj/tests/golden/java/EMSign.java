// Generated by bmod codegen from metamodel 'bmod'. Do not edit.

/**
 * A representation of the model object '<em><b>EMSign</b></em>'.
 * @generated
 */
public class EMSign {

  /**
   * The literals of the '<em>direction</em>' attribute.
   * @generated
   */
  public enum Direction { NORTH, SOUTH, EAST, WEST }

  protected Direction direction;

  /**
   * Creates a new '<em><b>EMSign</b></em>' with default feature values.
   * @generated
   */
  public EMSign() {
    super();
  }

  /**
   * Returns the value of the '<em>direction</em>' attribute.
   * @return the value of the '<em>direction</em>' attribute.
   * @generated
   */
  public Direction getDirection() {
    return direction;
  }

  /**
   * Sets the value of the '<em>direction</em>' attribute.
   * @param value the new value of the '<em>direction</em>' attribute.
   * @generated
   */
  public void setDirection(Direction value) {
    this.direction = value;
  }
}
